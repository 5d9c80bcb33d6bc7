//! Entanglement witnesses and the detection loophole.
//!
//! The crate builds linear witnesses (from partial-transpose eigenvectors and
//! from positive maps), extends them with a quadratic nonlinear term, and
//! decides whether witness values measured with lossy detectors still
//! certify entanglement.

pub mod document;
pub mod error;
pub mod linalg;
pub mod loophole;
pub mod states;
pub mod tolerance;
pub mod witness;

pub use document::MatrixDocument;
pub use error::{Error, Result};
pub use num_complex::Complex64;

//! Dense complex linear algebra for operators of dimension ≤ 9.

mod basis;
mod eigen;
mod matrix;

pub use basis::{decompose, Decomposition, OperatorBasis};
pub use eigen::{eigenvalues, hermitian_eig, min_eigenvalue, singular_values, HermitianEigen};
pub use matrix::{hermitian_split, kron, kron_vec, partial_transpose, CMatrix, Subsystem, I, ONE, ZERO};

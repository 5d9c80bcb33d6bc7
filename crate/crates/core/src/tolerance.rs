//! Numerical tolerances shared by every module.

/// Structural checks: Hermiticity, unit trace, positivity, eigen residuals.
pub const STRUCTURAL: f64 = 1e-10;

/// Basis reconstruction and coefficient reality.
pub const RECONSTRUCTION: f64 = 1e-12;

/// Unit-norm check for kets.
pub const KET_NORM: f64 = 1e-12;

/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// fraction of the input norm.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-14;

/// Tolerance knobs threaded through validation. Defaults match the module
/// constants above.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    pub structural: f64,
    pub reconstruction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            structural: STRUCTURAL,
            reconstruction: RECONSTRUCTION,
        }
    }
}

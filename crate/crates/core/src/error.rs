use thiserror::Error;

/// Errors raised by the numerical kernel and the witness/loophole layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is not Hermitian (defect norm {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("observable is not traceless (trace {trace:e})")]
    NotTraceless { trace: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("unsupported subsystem dimension {0}; only 2 and 3 have an operator basis")]
    UnsupportedDimension(usize),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("ket is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("entry is not finite")]
    NonFinite,

    #[error("malformed matrix document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

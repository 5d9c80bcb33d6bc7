use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] nlwit_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("writing output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for violated preconditions, 1 for I/O failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Csv(_) => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

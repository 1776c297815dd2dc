use std::path::PathBuf;

use minmin_core::Error as CoreError;
use thiserror::Error;

/// Failures that abort a command. Each maps to a stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("empty admissible domain: {0}")]
    EmptyDomain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::EmptyDomain(_) => 1,
            CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParameter(_) | CoreError::DimensionMismatch { .. } | CoreError::ConstraintViolated(_) => {
                CliError::Config(e.to_string())
            }
            CoreError::EmptyDomain => CliError::EmptyDomain(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

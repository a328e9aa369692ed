use std::path::Path;

use thiserror::Error;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] setmax_core::Error),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    /// A bound or audit failed; the report was still written.
    #[error("{0}")]
    Falsified(String),
}

impl CliError {
    pub fn io(path: &Path, err: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }

    /// 2 for usage and instance problems, 3 for a falsified bound.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Falsified(_) => 3,
            _ => 2,
        }
    }
}

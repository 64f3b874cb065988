use std::io;
use std::path::{Path, PathBuf};

use impspace::explore::ExploreError;
use impspace::halting::HaltError;
use impspace::{EnumError, ParseError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Estimation(#[from] HaltError),
    #[error(transparent)]
    Explore(#[from] ExploreError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
    #[error("integrity check failed: {0}")]
    Integrity(String),
}

impl CliError {
    /// Stable machine-readable category.
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Syntax(_) => "parse",
            CliError::Enumeration(_) => "range",
            CliError::Estimation(_) => "domain",
            CliError::Explore(_) => "explore",
            CliError::Io { .. } => "io",
            CliError::Format { .. } => "format",
            CliError::Integrity(_) => "integrity",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Syntax(_) => 3,
            CliError::Enumeration(_) => 4,
            CliError::Estimation(_) => 5,
            CliError::Explore(_) => 6,
            CliError::Io { .. } => 7,
            CliError::Format { .. } => 8,
            CliError::Integrity(_) => 9,
        }
    }

    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn format(path: &Path, message: impl ToString) -> Self {
        CliError::Format { path: path.to_path_buf(), message: message.to_string() }
    }
}

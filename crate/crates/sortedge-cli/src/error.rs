//! Failures of a command and their exit codes.

use thiserror::Error;

/// Exit code of a run whose statistical or exact checks failed.
pub const EXIT_ASSERTION: i32 = 1;
/// Exit code of malformed or out-of-domain arguments.
pub const EXIT_USAGE: i32 = 2;
/// Exit code of a numerical or I/O failure.
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(_) | CliError::Io(_) => EXIT_NUMERIC,
        }
    }
}

impl From<sortedge::Error> for CliError {
    fn from(e: sortedge::Error) -> CliError {
        match e {
            sortedge::Error::Domain(m) | sortedge::Error::Resource(m) => CliError::Usage(m),
            sortedge::Error::Numeric(m) => CliError::Numeric(m),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::Numeric(format!("serialisation failed: {e}"))
    }
}

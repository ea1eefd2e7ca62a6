//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the library.
///
/// The variants mirror the three ways an operation can go wrong: the input is
/// outside the mathematical domain of the operation, the request would exceed
/// a configured resource cap, or a numerical procedure did not deliver a
/// trustworthy answer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The arguments lie outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The request exceeds a configured size cap (brute-force enumerators).
    #[error("resource limit: {0}")]
    Resource(String),
    /// A numerical routine failed to converge or hit a degenerate case.
    #[error("numeric error: {0}")]
    Numeric(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

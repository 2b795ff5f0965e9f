//! Crate-wide error type, mapped to process exit codes by the CLI.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-contract input (exit code 2).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A configured resource cap was exceeded (exit code 3).
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    /// An internal cross-check failed; this indicates a bug (exit code 4).
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid input: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code contract: 0 success (negative verdicts included), 2 invalid
    /// input, 3 resource cap, 4 internal cross-validation failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::Json(_) | Error::Io(_) => 2,
            Error::ResourceLimit(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

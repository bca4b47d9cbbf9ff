//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input that violates a constraint of the model.
    #[error("validation error: {0}")]
    Validation(String),
    /// Input outside the supported range of an algorithm.
    #[error("unsupported input: {0}")]
    Unsupported(String),
    /// A checked mathematical invariant failed; indicates a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Validation(_) | Error::Unsupported(_) => 2,
            Error::Internal(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

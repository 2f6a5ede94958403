//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the svmtune library.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller violated an operation's input contract.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A text artifact (CSV, space file, config file) could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Stored data is inconsistent with the space or with itself.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// A full grid enumeration was refused because it exceeds the cap.
    #[error("grid of {size} points exceeds cap {cap}")]
    GridTooLarge { size: u128, cap: u128 },

    /// Range pruning found no records above the failure threshold.
    #[error("no surviving region: every record is at or below the failure threshold")]
    NoSurvivingRegion,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

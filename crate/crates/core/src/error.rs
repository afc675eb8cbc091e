use thiserror::Error;

use crate::model::ValidationReport;

/// Errors produced by model construction, evaluation, solving and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix shapes are inconsistent with each other or empty.
    #[error("structural error: {0}")]
    Structure(String),

    /// The instance violates one or more domain invariants.
    #[error("invalid instance: {0}")]
    Validation(ValidationReport),

    /// The schedule is not an injective talk-to-slot mapping for this instance.
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// The problem is too large for the requested method.
    #[error("problem too large: {0}")]
    Size(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Format(format!("line {}, column {}: {}", err.line(), err.column(), err))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

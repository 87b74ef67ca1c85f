use thiserror::Error;

/// Library-wide error type.
///
/// `Domain` means the caller violated a precondition (bad input, mismatched
/// shapes, non-dominant weight, malformed JSON). `Internal` means a
/// self-consistency check failed: a uniqueness argument produced zero or
/// several answers, a calibration gate tripped, or the two stability criteria
/// disagreed. The CLI maps these to exit codes 1 and 2 respectively.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

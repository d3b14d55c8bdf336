use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("set is unbounded in direction {0}")]
    Unbounded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("invalid proof: {0}")]
    InvalidProof(String),
    #[error("search limit exceeded: {0}")]
    SearchLimit(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

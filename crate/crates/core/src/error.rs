use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid handle: {0}")]
    InvalidHandle(String),
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("bound violated ({bound}): {detail}")]
    BoundViolation { bound: &'static str, detail: String },
    #[error("oracle mismatch: {0}")]
    Mismatch(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

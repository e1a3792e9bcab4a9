use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic: {0}")]
    Arithmetic(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("reduction state: {0}")]
    State(String),

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

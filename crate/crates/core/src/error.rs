use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument error: {0}")]
    Argument(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("elimination failed: {0}")]
    EliminationFailed(String),

    #[error("no ADE found: {0}")]
    NotFound(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

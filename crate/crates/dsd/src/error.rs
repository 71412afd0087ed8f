use thiserror::Error;

#[derive(Debug, Error)]
pub enum DsdError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("empty graph: {0}")]
    EmptyGraph(&'static str),

    #[error("graph too large: {0}")]
    TooLarge(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Serialize(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, DsdError>;

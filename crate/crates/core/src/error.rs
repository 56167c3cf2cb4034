use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("degree bound violated: {0}")]
    Degree(String),
    #[error("component assignment needs a caller-supplied index: {0}")]
    NeedsManualComponent(String),
    #[error("intersection needs manual treatment: {0}")]
    NeedsManualIntersection(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("out of range: {0}")]
    Range(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("digraph contains a directed cycle")]
    Cyclic,

    #[error("natural join condition violated: {0}")]
    JoinCondition(String),

    #[error("incompatible block chain: {0}")]
    Chain(String),

    #[error("matrix is not graded: {0}")]
    NotGraded(String),

    #[error("dom/ran condition violated: {0}")]
    DomRan(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

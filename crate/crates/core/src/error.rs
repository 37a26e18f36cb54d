use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("erasing rule for letter `{0}`")]
    ErasingRule(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("duplicate rule for letter `{0}`")]
    DuplicateRule(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("substitution is not primitive")]
    NotPrimitive,
    #[error("substitution generates a periodic subshift")]
    Periodic,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("numeric certification failed: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

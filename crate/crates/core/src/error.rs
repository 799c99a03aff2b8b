use thiserror::Error;

/// Errors raised by the reasoning engines, parsers and the sweep runner.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),

    #[error("{what} has {size} elements, over the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("side condition violated: {0}")]
    SideCondition(String),

    #[error("invalid splitting set: {0}")]
    InvalidSplit(String),

    #[error("program is not normal: {0}")]
    NotNormal(String),

    #[error("program uses classical negation: {0}")]
    ClassicalNegation(String),

    #[error("renaming collides with existing atom `{0}`")]
    NameCollision(String),

    #[error("resampling budget of {budget} exhausted while generating {family} instances")]
    BudgetExhausted { family: String, budget: usize },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

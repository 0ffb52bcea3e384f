use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("strategy not applicable: {0}")]
    Applicability(String),

    #[error("strategy fault at ply {ply}: {message}")]
    StrategyFault { ply: usize, message: String },

    #[error("not covered by a closed form: {0}")]
    NotCovered(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
}

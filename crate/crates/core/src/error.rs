use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed text input; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An exponential search was asked to run beyond its vertex budget.
    #[error("refused: {what} on {size} vertices exceeds budget of {budget}")]
    OverBudget {
        what: &'static str,
        size: usize,
        budget: usize,
    },

    /// An exponential search ran past its time cap.
    #[error("refused: {what} exceeded the time cap of {seconds} s")]
    TimeCap { what: &'static str, seconds: u64 },

    /// A produced object failed its independent re-check.
    #[error("self-check failed: {0}")]
    CheckFailed(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn check(msg: impl Into<String>) -> Self {
        Error::CheckFailed(msg.into())
    }
}

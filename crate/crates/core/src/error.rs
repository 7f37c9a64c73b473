use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An exhaustive enumeration would exceed the configured bound.
    #[error("capacity exceeded: {what} = {actual} is over the bound {bound} (override with CORE_SOLVE_MAX_AGENTS where applicable)")]
    Capacity {
        what: &'static str,
        bound: usize,
        actual: usize,
    },

    /// A semantically invalid input (bad index, violated precondition, class mismatch).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A malformed document or literal.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// Process exit code for the CLI: 2 for usage/parse problems, 3 for capacity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity { .. } => 3,
            Error::Invalid(_) | Error::Parse(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::model::ModelError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] ModelError),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config: {0}")]
    Config(String),

    #[error("resource budget exceeded: {needed} candidate vectors, limit {limit}")]
    ResourceBudget { needed: f64, limit: u64 },

    #[error("solution count overflowed 64 bits")]
    CountOverflow,

    #[error("series diverges: {0}")]
    Divergent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceBudget { .. } | Error::CountOverflow => 3,
            Error::Io(_) => 4,
            _ => 2,
        }
    }
}

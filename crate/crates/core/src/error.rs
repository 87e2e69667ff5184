use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("vertex {vertex} is not a vertex of {graph}")]
    NotInGraph { vertex: String, graph: String },

    #[error("not a bijection on positions 1..={0}")]
    NotBijection(usize),

    #[error("search budget exhausted after {explored} expansions")]
    BudgetExhausted { explored: u64 },

    /// The base-case provider could not supply the middle-levels cycle for `k`.
    #[error("no middle-levels cycle available for k={k}: {reason}")]
    Provider { k: usize, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{clause}@{index}: {detail}")]
    Validation {
        clause: String,
        index: usize,
        detail: String,
    },

    /// A construction produced an object that fails its own contract.
    #[error("invariant violated while building ({n},{k}): {clause}")]
    InvariantViolation { n: usize, k: usize, clause: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

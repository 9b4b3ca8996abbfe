//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("mixed arithmetic modes in a single structure")]
    MixedModes,

    #[error("non-finite float value")]
    NonFiniteFloat,

    #[error("dimension {dim} exceeds the double-description guard ({max})")]
    DimensionGuard { dim: usize, max: usize },

    #[error("operator is not quasimonotone; certification requires a quasimonotone input")]
    NotQuasimonotone,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("empty linear program: needs at least one constraint or an objective")]
    EmptyProblem,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("desk-scale bound exceeded: {what} (limit {limit})")]
    DeskScaleExceeded { what: String, limit: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("conductor {conductor} exceeds the configured bound {bound}")]
    ConductorOverflow { conductor: u64, bound: u32 },

    #[error("{k} is not coprime to the conductor {conductor}")]
    NotCoprime { k: i64, conductor: u32 },

    #[error("value {0} is not a rational integer")]
    NotRational(String),

    #[error("integer overflow in exact arithmetic")]
    ArithmeticOverflow,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("subgroup is not proper")]
    NotProper,

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

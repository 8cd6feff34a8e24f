use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("generator index {index} out of range for rank {n}")]
    GeneratorOutOfRange { index: usize, n: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("rank {n} exceeds the cap {cap} for {what}")]
    RankCap { what: &'static str, n: usize, cap: usize },

    #[error("resource cap exceeded: {what} (cap {cap})")]
    ResourceCap { what: &'static str, cap: usize },

    #[error("unsupported field: {0}")]
    Field(String),

    #[error("malformed table document: {0}")]
    Document(String),

    #[error("{0}")]
    Domain(String),

    #[error("inexact polynomial division: nonzero remainder")]
    InexactDivision,

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn check_rank(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::RankMismatch { left, right });
    }
    Ok(())
}

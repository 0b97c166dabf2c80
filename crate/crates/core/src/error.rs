use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: negative edge weight {weight}")]
    NegativeWeight { line: usize, weight: i64 },

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("distance from root vertex {root} reaches {limit}, which does not fit the label distance type")]
    DistanceOverflow { root: u32, limit: u64 },

    #[error("bit-parallel neighbor set invalid: {0}")]
    InvalidNeighborSet(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("invalid vertex order: {0}")]
    InvalidOrder(String),

    #[error("index format error: {0}")]
    Format(String),

    #[error("index file corrupt: {0}")]
    Corrupt(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

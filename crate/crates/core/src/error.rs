use thiserror::Error;

/// Errors reported by the bound pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    BadPrime(u64),
    #[error("at least one prime is required")]
    NoPrimes,
    #[error("invalid partition {0:?}: rows must be positive and nonincreasing")]
    BadPartition(Vec<usize>),
    #[error("young diagram with {boxes} boxes does not fit ambient size {n} (need |λ| < n)")]
    DiagramTooLarge { boxes: usize, n: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid tensor: {0}")]
    BadTensor(String),
    #[error("invalid matrix: {0}")]
    BadMatrix(String),
    #[error("ambient mismatch between cohomology elements")]
    AmbientMismatch,
    #[error("total bundle rank {rank} exceeds the limit {limit}")]
    RankLimit { rank: usize, limit: usize },
    #[error("bundle rank {rank} exceeds base dimension {dim}")]
    RankCondition { rank: usize, dim: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

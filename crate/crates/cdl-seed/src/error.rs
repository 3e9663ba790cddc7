use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SeedError {
    #[error("direction {k} out of range for rank {n}")]
    BadDirection { k: usize, n: usize },
    #[error("exchange matrix is decomposable")]
    Decomposable,
    #[error("matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("malformed input: {0}")]
    Malformed(String),
}

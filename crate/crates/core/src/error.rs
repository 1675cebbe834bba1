use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two positions (1-based) carry equal values where distinct values are required.
    #[error("duplicate values at positions {first} and {second}")]
    DuplicateValues { first: usize, second: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("{what}: size {n} exceeds the configured limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("n = {n} is outside the table (n_max = {n_max})")]
    OutOfTableRange { n: usize, n_max: usize },

    #[error("box ({row}, {col}) lies outside the shape")]
    BoxOutsideShape { row: usize, col: usize },

    #[error("not a permutation of 1..n: {0}")]
    NotAPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size {n} exceeds the enumeration limit {limit}")]
    LimitExceeded { n: usize, limit: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid cycle form: {0}")]
    InvalidCycleForm(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A bijection was handed an object outside its declared domain.
    #[error("{object} is not in {set}")]
    NotInSet { object: String, set: String },

    #[error("constant term of the divisor is not invertible")]
    NonInvertible,

    /// No case (or more than one) of the recursive bijection applied.
    #[error("omega dispatch failed for {perm}: {reason}")]
    Dispatch { perm: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

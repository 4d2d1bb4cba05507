use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input is not a sequence of distinct values, or not a permutation
    /// of `1..=n`.
    #[error("invalid permutation word: {0}")]
    InvalidWord(String),

    #[error("{what} {value} out of range 1..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("cannot delete a letter from a permutation of length 1")]
    DeleteFromSingleton,

    #[error("{perm} has {descents} descents; at most {allowed} allowed here")]
    OutOfClass {
        perm: String,
        descents: usize,
        allowed: usize,
    },

    /// The oracle refuses hosts beyond [`crate::poset::MAX_ORACLE_LEN`].
    #[error("interval too large: host of length {len} exceeds the oracle limit {max}")]
    IntervalTooLarge { len: usize, max: usize },

    #[error("{lower} is not contained in {upper}")]
    NotContained { lower: String, upper: String },

    /// A closed form was asked for an argument outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Preconditions of a classifier or evaluator were not met.
    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

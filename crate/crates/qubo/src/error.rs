use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuboError {
    #[error("assignment has {got} variables, model has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for model of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("diagonal pair ({0}, {0}) is not a quadratic term")]
    DiagonalPair(usize),
    #[error("coefficient for {what} is not finite")]
    NonFinite { what: String },
    #[error("fixed value for variable {index} must be 0 or 1, got {value}")]
    NonBinary { index: usize, value: u8 },
    #[error("brute force supports at most {max} variables, model has {n}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid anneal schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid extraction strategy: {0}")]
    InvalidStrategy(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

use thiserror::Error;

use crate::weight_algebra::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid weight: the zero vector is not allowed{}", context(.0))]
    ZeroWeight(Option<String>),

    #[error("linear form {0} vanishes at the evaluation point")]
    NonGenericPoint(Weight),

    #[error("circle {xi} pairs to zero with weight {weight} at fixed point {point}")]
    NonGenericCircle {
        xi: Weight,
        point: String,
        weight: Weight,
    },

    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("duplicate fixed point id {0:?}")]
    DuplicateId(String),

    #[error("edge endpoint {0:?} is not a vertex")]
    UnknownVertex(String),

    #[error("vectors do not form a basis of Z^{0}")]
    NotUnimodular(usize),

    #[error("weights {0} and {1} are linearly dependent")]
    Dependent(Weight, Weight),

    #[error("pairing violated: weight {weight} occurs {count} times but its negative {negated_count} times")]
    PairingViolation {
        weight: Weight,
        count: usize,
        negated_count: usize,
    },

    #[error("no perfect matching for the weight class {0}")]
    NoPerfectMatching(Weight),

    #[error("numerator degree {degree} exceeds half dimension {half_dim}; generic evaluation is unsound")]
    DegreeTooHigh { degree: usize, half_dim: usize },

    #[error("localization sum is inconsistent: {0}")]
    Inconsistent(String),

    #[error("localization sum {0} is not an integer")]
    NonIntegral(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

fn context(c: &Option<String>) -> String {
    match c {
        Some(c) => format!(" ({c})"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;

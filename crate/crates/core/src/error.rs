//! Crate-wide error type.

use thiserror::Error;

use crate::gf::GfError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("invariant violation: {}", .0.join("; "))]
    InvariantViolation(Vec<String>),
    #[error("{divisor} does not divide {value}")]
    NotADivisor { divisor: u64, value: u64 },
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("budget of {budget} tests exceeded; minimum distance is at least {lower_bound}")]
    BudgetExceeded { budget: u64, lower_bound: usize },
    #[error("evaluation points collide: positions {first} and {second} ({clause})")]
    DistinctnessViolation { first: usize, second: usize, clause: String },
    #[error("column {0} is entirely zero")]
    DegenerateColumn(usize),
    #[error("closed-form count {numerator}/{denominator} is not an integer")]
    NonIntegerResult { numerator: String, denominator: String },
    #[error("report has no hull dimension for the {0} inner product")]
    MissingHull(&'static str),
    #[error("report has no dual distance")]
    MissingDualDistance,
    #[error("bad input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

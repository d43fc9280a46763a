use thiserror::Error;

use crate::algebra::Rational;

/// Errors raised by the localization toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-regular point: density is undefined at breakpoint {0}")]
    NonRegularPoint(Rational),

    #[error("non-regular cut level {0}: it coincides with a breakpoint")]
    NonRegularCut(Rational),

    #[error(
        "non-regular level {level}: it equals the moment value of fixed point `{fixed_point}`"
    )]
    NonRegularLevel {
        level: Rational,
        fixed_point: String,
    },

    #[error("inexact division: numerator is not a multiple of the denominator")]
    InexactDivision,

    #[error("division by the zero Laurent polynomial")]
    DivisionByZero,

    #[error(
        "non-generic direction: weight row {row} of fixed point `{fixed_point}` pairs to zero"
    )]
    NonGenericDirection { fixed_point: String, row: usize },

    #[error(
        "GLS sum does not vanish above the top fixed point (first failing j = {first_failure})"
    )]
    Inconsistent { first_failure: usize },

    #[error("torus rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("half-dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected a circle action (torus rank 1), found rank {0}")]
    NotCircle(usize),

    #[error("weight vector has a repeated entry {0}")]
    RepeatedWeight(i64),

    #[error("not quasi-free: fixed point `{fixed_point}` has weight {weight}")]
    NotQuasiFree { fixed_point: String, weight: i64 },

    #[error("moment value {value} of fixed point `{fixed_point}` is not an integer")]
    NotIntegral {
        fixed_point: String,
        value: Rational,
    },

    #[error("fixed-point index {index} out of range for {len} fixed points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("horizon {horizon} must lie above the base value {base}")]
    HorizonBelowBase {
        base: Box<Rational>,
        horizon: Box<Rational>,
    },

    #[error("zero-dimensional fixed points carry atomic measures, which are not supported")]
    AtomicMeasure,

    #[error("invalid space data: {0}")]
    InvalidData(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

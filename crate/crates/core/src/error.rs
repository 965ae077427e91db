use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid base sequence: {0}")]
    InvalidBases(String),

    #[error("digit {digit} at position {position} is out of range for base {base}")]
    InvalidDigit {
        position: usize,
        digit: u32,
        base: u32,
    },

    #[error("depth {requested} is below the representation depth {current}")]
    DepthBelowRepresentation { requested: u32, current: u32 },

    #[error("depth {0} exceeds the representable range of this system")]
    DepthOverflow(u32),

    #[error("operands belong to different odometer systems")]
    MismatchedSystems,

    #[error("{0} must be nonempty")]
    EmptySet(&'static str),

    #[error("precondition violated: μ(A) ≥ μ(B) ({a} ≥ {b})")]
    MeasureNotLess { a: Rational, b: Rational },

    #[error("precondition violated: μ(A) ≠ μ(B) ({a} ≠ {b})")]
    MeasureMismatch { a: Rational, b: Rational },

    #[error("precondition violated: A and B are not disjoint")]
    NotDisjoint,

    #[error("not a clopen partition: {0}")]
    NotPartition(String),

    #[error("precondition violated: T^{k} is not minimal (orbit of length {orbit} at depth {depth} instead of {expected})")]
    NotMinimal {
        k: u64,
        depth: u32,
        orbit: u64,
        expected: u64,
    },

    #[error("precondition violated: point {0} is not inside {1}")]
    PointOutside(String, &'static str),

    #[error("invalid epsilon {0}: must satisfy 0 < ε ≤ 1")]
    InvalidEpsilon(Rational),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("work budget exceeded: {0}")]
    Budget(String),
}

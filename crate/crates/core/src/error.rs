use crate::algebra::{Polynomial, Rational};
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is not divisible (remainder {remainder})")]
    NotDivisible { remainder: Polynomial },

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("denominator is the zero polynomial")]
    ZeroDenominator,

    #[error("quasi-polynomial bases differ ({left} vs {right})")]
    BaseMismatch { left: Box<Rational>, right: Box<Rational> },

    #[error("geometric base must be nonzero")]
    ZeroBase,

    #[error("invalid rational literal {0:?} (expected an exact fraction such as 1/3)")]
    InvalidRational(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("x = {x} lies outside the grid {{0..{n}}}")]
    OutOfGrid { x: i64, n: i64 },

    #[error("index {index} outside {{0..{n}}}")]
    OutOfRange { index: i64, n: i64 },

    #[error("family index must be 1, 2, 3 or 4 (got {0})")]
    InvalidFamily(i64),

    #[error("index n = {n} requires the special constructor for (j,d) = ({j},{d})")]
    SpecialMemberRequired { j: u8, d: u32, n: i64 },

    #[error("normalization vanishes at (j,d,n) = ({j},{d},{n})")]
    DegenerateNu { j: u8, d: u32, n: i64 },

    #[error("index n = {n} is not a member of the (j,d) = ({j},{d}) family")]
    InvalidIndex { j: u8, d: u32, n: i64 },

    #[error("factorization requires n > N (n = {n}, N = {big_n})")]
    NotInRange { n: i64, big_n: i64 },

    #[error("weight has a pole at grid point x = {x}")]
    WeightPole { x: i64 },

    #[error("polynomial is not in the span of the exceptional family: {0}")]
    NotInSpan(String),

    #[error("index excluded from the operator method: (j,n) = ({j},{n})")]
    ExcludedIndex { j: u8, n: i64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

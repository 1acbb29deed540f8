//! Exact q-expansions of unary theta functions, eta quotients and explicit
//! vector-valued mock modular forms, with Hecke-type operators and a
//! verification harness.
//!
//! Every coefficient is an exact rational number. Series carry a cutoff: the
//! largest exponent through which they are known to be complete.

pub mod arith;
pub mod heckeops;
pub mod mockforms;
pub mod qseries;
pub mod quadfield;
pub mod thetaeta;
pub mod verify;

pub use arith::Rational;
pub use qseries::{GroupRingVector, RationalQSeries, Rep, VectorQSeries};
pub use quadfield::{QuadFieldElem, UnitSpec};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative input {0}")]
    Negative(i64),
    #[error("expected a positive integer, got {0}")]
    NonPositive(i64),
    #[error("periodic Bernoulli function B_{0} is not supported")]
    UnsupportedBernoulli(u32),
    #[error("series has no least exponent")]
    NoLeadingTerm,
    #[error("cannot invert the zero series")]
    ZeroInverse,
    #[error("index group mismatch: {0}")]
    GroupMismatch(String),
    #[error("{0} is a perfect square")]
    SquareRadicand(i64),
    #[error("construction not applicable: {0}")]
    Inapplicable(String),
    #[error("cutoff {cutoff} is below the principal part (needs at least {min})")]
    CutoffBelowPrincipalPart { cutoff: String, min: String },
    #[error("series only complete to {have}, needed {need}")]
    Incomplete { have: String, need: String },
    #[error("no unit found: {0}")]
    UnitSearch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

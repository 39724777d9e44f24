//! Crate-wide error type.

use std::fmt;

/// Errors surfaced by the exact and numeric pipelines.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Rational-function construction with a zero denominator.
    ZeroDenominator,
    /// A series operation would need more terms than the operand carries.
    TruncationTooShort(String),
    /// (family, beta) pair outside the operator catalog.
    UnsupportedBeta(String),
    /// Matrix ODE does not have the tridiagonal substitution structure.
    StructureMismatch(String),
    /// Differential-difference system size outside {2, 4, 6}.
    UnsupportedN(usize),
    /// Not enough moments supplied to reduce the Stieltjes transform.
    InsufficientMoments { needed: usize, got: usize },
    /// Triangular solve for the initial moments hit a zero pivot.
    SingularSystem(String),
    /// Negative moment requested outside the convergence gate k < a+1.
    DivergentMoment { k: i64 },
    /// Table does not cover the index range a fixture demands.
    RangeTooSmall(String),
    /// Brute-force monomial expansion exceeded the configured bound.
    SizeLimit(String),
    /// Adaptive quadrature or ODE integration failed to meet tolerance.
    ToleranceNotMet(String),
    /// Sampling model not available for the requested family.
    UnsupportedFamily(String),
    /// Special-function argument outside the supported domain.
    DomainExceeded { x: f64, limit: f64 },
    /// Soft-edge seed point sensitivity beyond tolerance.
    SeedUnstable { shift: f64, delta: f64 },
    /// Hard-edge request for a family without a hard edge.
    NoHardEdge,
    /// Parameter validation failure (bad flags, invariant violations).
    InvalidParameter(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDenominator => write!(f, "zero denominator"),
            Error::TruncationTooShort(m) => write!(f, "truncation too short: {m}"),
            Error::UnsupportedBeta(m) => write!(f, "unsupported beta: {m}"),
            Error::StructureMismatch(m) => write!(f, "structure mismatch: {m}"),
            Error::UnsupportedN(n) => write!(f, "unsupported system size n = {n}"),
            Error::InsufficientMoments { needed, got } => {
                write!(f, "insufficient moments: need {needed}, got {got}")
            }
            Error::SingularSystem(m) => write!(f, "singular system: {m}"),
            Error::DivergentMoment { k } => write!(f, "divergent moment m_{k}"),
            Error::RangeTooSmall(m) => write!(f, "range too small: {m}"),
            Error::SizeLimit(m) => write!(f, "size limit exceeded: {m}"),
            Error::ToleranceNotMet(m) => write!(f, "tolerance not met: {m}"),
            Error::UnsupportedFamily(m) => write!(f, "unsupported family: {m}"),
            Error::DomainExceeded { x, limit } => {
                write!(f, "argument {x} outside domain |x| <= {limit}")
            }
            Error::SeedUnstable { shift, delta } => {
                write!(f, "seed point shift {shift} moved bulk match by {delta}")
            }
            Error::NoHardEdge => write!(f, "ensemble has no hard edge"),
            Error::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

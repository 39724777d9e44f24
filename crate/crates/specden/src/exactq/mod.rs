//! Exact arithmetic foundation: rationals, polynomials, rational functions,
//! and truncated inverse-power series.

pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod scalar;
pub mod series;

pub use poly::{Poly, PolyQ};
pub use ratfun::{ratfun_normalize, RatFun};
pub use rational::Rational;
pub use scalar::{Quad, RatN, Scalar};
pub use series::{series_apply_diffop, series_from_moments, InvXSeries};

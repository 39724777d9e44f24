//! Exact-arithmetic toolkit for the spectral densities and resolvents of the
//! classical (Gaussian, Laguerre, Jacobi) random-matrix beta ensembles.
//!
//! The library is organised around a catalog of linear differential operators
//! that annihilate the one-point eigenvalue densities for
//! beta in {2/3, 1, 2, 4, 6} (family dependent), together with the machinery
//! those operators drive:
//!
//! * [`exactq`] — arbitrary-precision rationals, dense univariate polynomials,
//!   rational functions (over Q or Q(N)), and truncated inverse-power series.
//! * [`diffop`] — differential-operator algebra, the operator catalog, change
//!   of variables, weight conjugation, and scalar elimination from first-order
//!   matrix ODE systems.
//! * [`stieltjes`] — converts a density ODE into a linear moment recurrence
//!   and the inhomogeneous resolvent ODE; solves for the initial moments.
//! * [`moments`] — exact/symbolic/negative moment tables and the 1/N-expansion
//!   coefficient tables, with the printed recursion families as fixtures.
//! * [`resolvent`] — topological-expansion coefficients of the scaled
//!   resolvents as truncated 1/x series.
//! * [`oracle`] — independent ground truth: Christoffel-Darboux densities,
//!   brute-force and quadrature moments, Monte Carlo tridiagonal sampling.
//! * [`edge`] — soft and hard edge limiting densities as ODE solutions with
//!   Airy/Bessel oracles.
//!
//! All exact types are immutable after construction and all operations are
//! pure, so values can be shared freely across threads.

pub mod diffop;
pub mod edge;
pub mod error;
pub mod exactq;
pub mod moments;
pub mod oracle;
pub mod resolvent;
pub mod stieltjes;

pub use error::{Error, Result};
pub use exactq::{InvXSeries, Poly, PolyQ, Quad, RatFun, RatN, Rational, Scalar};

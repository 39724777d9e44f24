//! Ensemble descriptions: family, beta, size, and weight parameters.

use crate::error::{Error, Result};
use crate::exactq::rational::Rational;
use crate::exactq::scalar::{RatN, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Gaussian,
    Laguerre,
    Jacobi,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Gaussian => "gaussian",
            Family::Laguerre => "laguerre",
            Family::Jacobi => "jacobi",
        }
    }
}

/// Gaussian weight convention: either the coupled form e^(-N kappa x^2 / (2g))
/// with an explicit g, or the fixed unit weight e^(-x^2) (g = N kappa / 2).
#[derive(Clone, Debug, PartialEq)]
pub enum GaussianCoupling<S> {
    Coupling(S),
    UnitWeight,
}

/// Ensemble parameters over a scalar field: concrete rationals for numeric
/// work, Q(N) for symbolic-in-N tables.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleSpec<S: Scalar> {
    pub family: Family,
    pub beta: Rational,
    pub n: S,
    pub a: S,
    pub b: S,
    pub coupling: GaussianCoupling<S>,
}

impl<S: Scalar> EnsembleSpec<S> {
    pub fn gaussian(beta: Rational, n: S) -> Self {
        EnsembleSpec {
            family: Family::Gaussian,
            beta,
            n,
            a: S::zero(),
            b: S::zero(),
            coupling: GaussianCoupling::UnitWeight,
        }
    }

    pub fn gaussian_with_g(beta: Rational, n: S, g: S) -> Self {
        EnsembleSpec {
            family: Family::Gaussian,
            beta,
            n,
            a: S::zero(),
            b: S::zero(),
            coupling: GaussianCoupling::Coupling(g),
        }
    }

    pub fn laguerre(beta: Rational, n: S, a: S) -> Self {
        EnsembleSpec {
            family: Family::Laguerre,
            beta,
            n,
            a,
            b: S::zero(),
            coupling: GaussianCoupling::UnitWeight,
        }
    }

    pub fn jacobi(beta: Rational, n: S, a: S, b: S) -> Self {
        EnsembleSpec {
            family: Family::Jacobi,
            beta,
            n,
            a,
            b,
            coupling: GaussianCoupling::UnitWeight,
        }
    }

    pub fn kappa(&self) -> Rational {
        &self.beta * &Rational::new(1, 2)
    }

    /// The Gaussian coupling g, resolving the unit-weight marker to N kappa / 2.
    pub fn g(&self) -> S {
        match &self.coupling {
            GaussianCoupling::Coupling(g) => g.clone(),
            GaussianCoupling::UnitWeight => self.n.mul(&S::from_rat(self.kappa() * Rational::new(1, 2))),
        }
    }
}

impl EnsembleSpec<Rational> {
    /// Range checks that only make sense for numeric parameters.
    pub fn validate(&self) -> Result<()> {
        let minus_one = Rational::from_int(-1);
        match self.family {
            Family::Laguerre => {
                if self.a <= minus_one {
                    return Err(Error::InvalidParameter("Laguerre requires a > -1".into()));
                }
            }
            Family::Jacobi => {
                if self.a <= minus_one || self.b <= minus_one {
                    return Err(Error::InvalidParameter("Jacobi requires a, b > -1".into()));
                }
            }
            Family::Gaussian => {}
        }
        if self.n.is_zero() || self.n.is_negative() {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        Ok(())
    }

    /// Lift to the symbolic field Q(N) keeping a and b fixed; used by the
    /// degenerate-pivot fallback in the moment driver.
    pub fn lift_symbolic(&self) -> EnsembleSpec<RatN> {
        EnsembleSpec {
            family: self.family,
            beta: self.beta.clone(),
            n: RatN::var(),
            a: RatN::constant(self.a.clone()),
            b: RatN::constant(self.b.clone()),
            coupling: match &self.coupling {
                GaussianCoupling::UnitWeight => GaussianCoupling::UnitWeight,
                GaussianCoupling::Coupling(g) => {
                    GaussianCoupling::Coupling(RatN::constant(g.clone()))
                }
            },
        }
    }
}

//! Rational functions num/den over an exact scalar field.
//!
//! Canonical form: gcd(num, den) = 1 and den monic, so exact equality is
//! decidable by field-wise comparison.

use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct RatFun<S: Scalar> {
    num: Poly<S>,
    den: Poly<S>,
}

impl<S: Scalar> RatFun<S> {
    /// Canonical reduced form of num/den; `ZeroDenominator` if den = 0.
    pub fn new(num: Poly<S>, den: Poly<S>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly<S>, den: Poly<S>) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun { num: Poly::zero(), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead != S::one() {
            let inv = lead.inv();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly<S>) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly<S> {
        &self.num
    }

    pub fn den(&self) -> &Poly<S> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        let den = self.den.mul(&o.den);
        Self::normalized(num, den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::normalized(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// d/dx via the quotient rule.
    pub fn derivative(&self) -> Self {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        let den = self.den.mul(&self.den);
        Self::normalized(num, den)
    }
}

impl<S: Scalar> fmt::Display for RatFun<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<S: Scalar> fmt::Debug for RatFun<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonicalize the pair (num, den); the [OP] surface of this module.
pub fn ratfun_normalize<S: Scalar>(num: Poly<S>, den: Poly<S>) -> Result<RatFun<S>> {
    RatFun::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rational::Rational;

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::from_ints(cs)
    }

    #[test]
    fn constant_factor_cancellation() {
        // (2x + 2)/4 -> (x + 1)/2
        let r = ratfun_normalize(p(&[2, 2]), p(&[4])).unwrap();
        assert_eq!(r.num(), &p(&[1, 1]).scale(&Rational::new(1, 2)));
        assert!(r.den().is_one());
        // den is monic, so the 1/2 lands in the numerator
        assert_eq!(r.num().coeff(1), Rational::new(1, 2));
    }

    #[test]
    fn common_root_cancellation() {
        // (x^2 - 1)/(x - 1) -> x + 1
        let r = ratfun_normalize(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r.num(), &p(&[1, 1]));
        assert!(r.den().is_one());
    }

    #[test]
    fn zero_denominator_error() {
        assert_eq!(
            ratfun_normalize(p(&[0, 1]), Poly::zero()).unwrap_err(),
            Error::ZeroDenominator
        );
    }

    #[test]
    fn normalize_idempotent() {
        let r = ratfun_normalize(p(&[2, 4, 2]), p(&[0, 6, 6])).unwrap();
        let again = ratfun_normalize(r.num().clone(), r.den().clone()).unwrap();
        assert_eq!(r, again);
    }
}

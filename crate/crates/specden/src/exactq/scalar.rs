//! Coefficient fields for the polynomial and operator towers.
//!
//! Exactly three coefficient domains are used in this crate:
//!
//! * [`Rational`] — concrete Q; every fully numeric computation lives here.
//! * [`RatN`] — the univariate rational-function field Q(N); used when moment
//!   tables and operators are carried symbolically in the matrix dimension N.
//! * [`Quad`] — the quadratic extension Q(sqrt(kappa)) for a concrete rational
//!   kappa; used only inside the Gaussian differential-difference systems,
//!   whose entries carry odd powers of sqrt(kappa) that cancel on elimination.

use super::poly::Poly;
use super::ratfun::RatFun;
use super::rational::Rational;
use std::fmt;

/// A field of exact scalars. All catalog and recurrence machinery is generic
/// over this trait so the same code runs over Q, Q(N), and Q(sqrt(kappa)).
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero (callers gate on `is_zero`).
    fn inv(&self) -> Self;

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    fn from_int(n: i64) -> Self {
        Self::from_rat(Rational::from_int(n))
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rat(r: Rational) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Rational function of the symbol N over Q, kept in lowest terms with a
/// monic denominator so equality is field-wise structural equality.
#[derive(Clone, PartialEq)]
pub struct RatN(pub RatFun<Rational>);

impl RatN {
    /// The symbol N itself.
    pub fn var() -> Self {
        RatN(RatFun::from_poly(Poly::monomial(Rational::one(), 1)))
    }

    pub fn constant(r: Rational) -> Self {
        RatN(RatFun::from_poly(Poly::constant(r)))
    }

    pub fn from_poly(p: Poly<Rational>) -> Self {
        RatN(RatFun::from_poly(p))
    }

    /// Evaluate at a concrete N. Panics if the reduced denominator vanishes
    /// there (a genuine pole, which finite moments never produce).
    pub fn eval(&self, n: &Rational) -> Rational {
        let den = self.0.den().eval(n);
        assert!(!den.is_zero(), "RatN evaluated at a pole: N = {n}");
        let num = self.0.num().eval(n);
        num / den
    }

    pub fn num(&self) -> &Poly<Rational> {
        self.0.num()
    }

    pub fn den(&self) -> &Poly<Rational> {
        self.0.den()
    }

    /// The value as a polynomial in N, if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly<Rational>> {
        if self.0.den().is_one() {
            Some(self.0.num())
        } else {
            None
        }
    }
}

impl fmt::Display for RatN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.den().is_one() {
            write!(f, "{}", self.0.num().display_var("N"))
        } else {
            write!(
                f,
                "({})/({})",
                self.0.num().display_var("N"),
                self.0.den().display_var("N")
            )
        }
    }
}

impl fmt::Debug for RatN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar for RatN {
    fn zero() -> Self {
        RatN(RatFun::zero())
    }
    fn one() -> Self {
        RatN(RatFun::one())
    }
    fn from_rat(r: Rational) -> Self {
        RatN::constant(r)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        RatN(self.0.add(&o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        RatN(self.0.sub(&o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        RatN(self.0.mul(&o.0))
    }
    fn neg(&self) -> Self {
        RatN(self.0.neg())
    }
    fn inv(&self) -> Self {
        RatN(self.0.inv())
    }
}

/// Element re + im*sqrt(kappa) of Q(sqrt(kappa)).
///
/// `kappa` is carried per value; values produced by `zero`/`one`/`from_rat`
/// leave it unset (None) and unify with either side of a binary operation.
/// Mixing two set-but-different kappas is a programming error and panics.
#[derive(Clone)]
pub struct Quad {
    pub re: Rational,
    pub im: Rational,
    kappa: Option<Rational>,
}

impl Quad {
    pub fn new(re: Rational, im: Rational, kappa: Rational) -> Self {
        Quad { re, im, kappa: Some(kappa) }
    }

    pub fn from_re(re: Rational) -> Self {
        Quad { re, im: Rational::zero(), kappa: None }
    }

    /// im * sqrt(kappa); at kappa = 1 the extension is trivial and the value
    /// folds into the rational part.
    pub fn from_im(im: Rational, kappa: Rational) -> Self {
        if kappa.is_one() {
            Quad { re: im, im: Rational::zero(), kappa: None }
        } else {
            Quad { re: Rational::zero(), im, kappa: Some(kappa) }
        }
    }

    fn unified_kappa(&self, o: &Quad) -> Option<Rational> {
        match (&self.kappa, &o.kappa) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "mixed sqrt(kappa) fields");
                Some(a.clone())
            }
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        }
    }

    fn kappa_value(&self) -> Rational {
        self.kappa.clone().expect("kappa required but unset")
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }
}

impl PartialEq for Quad {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*sqrt(k)", self.im)
        } else {
            write!(f, "{} + {}*sqrt(k)", self.re, self.im)
        }
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar for Quad {
    fn zero() -> Self {
        Quad::from_re(Rational::zero())
    }
    fn one() -> Self {
        Quad::from_re(Rational::one())
    }
    fn from_rat(r: Rational) -> Self {
        Quad::from_re(r)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Quad { re: &self.re + &o.re, im: &self.im + &o.im, kappa: self.unified_kappa(o) }
    }
    fn sub(&self, o: &Self) -> Self {
        Quad { re: &self.re - &o.re, im: &self.im - &o.im, kappa: self.unified_kappa(o) }
    }
    fn mul(&self, o: &Self) -> Self {
        let kappa = self.unified_kappa(o);
        let cross = &(&self.re * &o.im) + &(&self.im * &o.re);
        let mut re = &self.re * &o.re;
        let improd = &self.im * &o.im;
        if !improd.is_zero() {
            let k = kappa.clone().expect("kappa required for sqrt(k)^2");
            re += improd * k;
        }
        Quad { re, im: cross, kappa }
    }
    fn neg(&self) -> Self {
        Quad { re: -&self.re, im: -&self.im, kappa: self.kappa.clone() }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.im.is_zero() {
            return Quad { re: self.re.recip(), im: Rational::zero(), kappa: self.kappa.clone() };
        }
        let k = self.kappa_value();
        // 1/(a + b sqrt(k)) = (a - b sqrt(k)) / (a^2 - b^2 k)
        let norm = &(&self.re * &self.re) - &(&(&self.im * &self.im) * &k);
        assert!(!norm.is_zero(), "non-invertible Quad (norm zero)");
        Quad {
            re: &self.re / &norm,
            im: -&(&self.im / &norm),
            kappa: Some(k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(re: (i64, i64), im: (i64, i64)) -> Quad {
        Quad::new(
            Rational::new(re.0, re.1),
            Rational::new(im.0, im.1),
            Rational::from_int(3),
        )
    }

    #[test]
    fn quad_field_ops() {
        let a = q((1, 2), (2, 1));
        let b = q((3, 1), (-1, 2));
        let prod = a.mul(&b);
        // (1/2 + 2s)(3 - s/2) with s^2 = 3: re = 3/2 - 3 = -3/2, im = -1/4 + 6
        assert_eq!(prod.re, Rational::new(-3, 2));
        assert_eq!(prod.im, Rational::new(23, 4));
        let inv = a.inv();
        let one = a.mul(&inv);
        assert!(one.re.is_one() && one.im.is_zero());
    }

    #[test]
    fn ratn_eval() {
        // (N^2 - 1)/(N - 1) reduces to N + 1, finite at N = 1
        let n2m1 = Poly::from_rationals(&[Rational::from_int(-1), Rational::zero(), Rational::one()]);
        let nm1 = Poly::from_rationals(&[Rational::from_int(-1), Rational::one()]);
        let r = RatN(RatFun::new(n2m1, nm1).unwrap());
        assert_eq!(r.eval(&Rational::from_int(1)), Rational::from_int(2));
    }
}

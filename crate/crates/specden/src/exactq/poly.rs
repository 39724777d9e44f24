//! Dense univariate polynomials over an exact scalar field.
//!
//! Coefficients are stored by ascending degree with no trailing zeros; the
//! zero polynomial is the empty list. Degrees in this crate stay below ~200,
//! so the dense representation is the right trade.

use super::rational::Rational;
use super::scalar::Scalar;
use std::fmt;

/// Polynomial in one variable; `coeffs[i]` is the coefficient of x^i.
#[derive(Clone, PartialEq)]
pub struct Poly<S: Scalar> {
    coeffs: Vec<S>,
}

/// Polynomials with concrete rational coefficients.
pub type PolyQ = Poly<Rational>;

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn monomial(c: S, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![S::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    /// x
    pub fn var() -> Self {
        Poly::monomial(S::one(), 1)
    }

    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == S::one()
    }

    /// Degree; the zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with deg(0) = -1, convenient for shift arithmetic.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&o.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&o.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&S::from_int(i as i64)));
        }
        Poly::from_coeffs(out)
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute x -> alpha*x + beta.
    pub fn compose_affine(&self, alpha: &S, beta: &S) -> Self {
        let lin = Poly::from_coeffs(vec![beta.clone(), alpha.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Euclidean division; returns (quotient, remainder). Panics on zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = d.leading().unwrap().inv();
        let mut rem = self.clone();
        let mut quo = vec![S::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap().mul(&lead_inv);
            let shift = rd - dd;
            quo[shift] = factor.clone();
            let sub = d.scale(&factor).shift_up(shift);
            rem = rem.sub(&sub);
        }
        (Poly::from_coeffs(quo), rem)
    }

    /// True when `d` divides `self` exactly.
    pub fn divides(&self, d: &Self) -> bool {
        self.divrem(d).1.is_zero()
    }

    /// Monic GCD via the Euclidean algorithm, with each remainder made monic
    /// to keep coefficient growth in check. gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone().into_monic();
        let mut b = o.clone().into_monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.into_monic();
        }
        a
    }

    fn into_monic(mut self) -> Self {
        if let Some(l) = self.leading() {
            if *l != S::one() {
                let inv = l.inv();
                self = self.scale(&inv);
            }
        }
        self
    }

    pub fn monic(&self) -> Self {
        self.clone().into_monic()
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| f(c)).collect())
    }

    /// Render with an explicit variable name, ascending degree.
    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => format!("{c}"),
                1 => format!("({c})*{var}"),
                _ => format!("({c})*{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl Poly<Rational> {
    pub fn from_rationals(cs: &[Rational]) -> Self {
        Poly::from_coeffs(cs.to_vec())
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::from_coeffs(cs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    /// Falling-factorial coefficient content helper: evaluates at integer k.
    pub fn eval_int(&self, k: i64) -> Rational {
        self.eval(&Rational::from_int(k))
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("x"))
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> PolyQ {
        Poly::from_ints(cs)
    }

    #[test]
    fn no_trailing_zeros() {
        let q = Poly::from_coeffs(vec![
            Rational::from_int(1),
            Rational::zero(),
            Rational::zero(),
        ]);
        assert_eq!(q.degree(), Some(0));
        assert!(p(&[]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[2, 0, -3, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_common_root() {
        // (x^2 - 1) and (x - 1) share (x - 1)
        let g = p(&[-1, 0, 1]).gcd(&p(&[-1, 1]));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn compose_affine_evals() {
        let f = p(&[1, 2, 3]); // 3x^2 + 2x + 1
        let g = f.compose_affine(&Rational::from_int(2), &Rational::from_int(-1));
        // g(x) = f(2x - 1); check at x = 3: f(5) = 86
        assert_eq!(g.eval(&Rational::from_int(3)), Rational::from_int(86));
    }
}

//! Linear differential operators sum_i p_i(x) d^i/dx^i with polynomial
//! coefficients, plus the rational-coefficient variant used internally by
//! change of variables and scalar elimination.

use crate::exactq::poly::{Poly, PolyQ};
use crate::exactq::ratfun::RatFun;
use crate::exactq::rational::Rational;
use crate::exactq::scalar::Scalar;
use std::fmt;

/// Operator with polynomial coefficients; `coeffs[i]` multiplies d^i/dx^i.
/// The empty list is the zero operator.
#[derive(Clone, PartialEq)]
pub struct DiffOp<S: Scalar> {
    coeffs: Vec<Poly<S>>,
}

impl<S: Scalar> DiffOp<S> {
    pub fn zero() -> Self {
        DiffOp { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<Poly<S>>) -> Self {
        let mut op = DiffOp { coeffs };
        op.trim();
        op
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(p) if p.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Derivative order; panics on the zero operator.
    pub fn order(&self) -> usize {
        assert!(!self.coeffs.is_empty(), "order of the zero operator");
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Poly<S> {
        self.coeffs.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        DiffOp::from_coeffs((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        DiffOp::from_coeffs((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        DiffOp::from_coeffs(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn scale_poly(&self, p: &Poly<S>) -> Self {
        DiffOp::from_coeffs(self.coeffs.iter().map(|q| q.mul(p)).collect())
    }

    /// Apply to a plain polynomial: sum_i p_i * f^(i).
    pub fn apply_to_poly(&self, f: &Poly<S>) -> Poly<S> {
        let mut out = Poly::zero();
        let mut df = f.clone();
        for p in &self.coeffs {
            out = out.add(&p.mul(&df));
            df = df.derivative();
        }
        out
    }

    /// Substitute x -> alpha*x + beta: coefficients compose, each d^i picks
    /// up alpha^(-i).
    pub fn pullback_affine(&self, alpha: &S, beta: &S) -> Self {
        assert!(!alpha.is_zero(), "affine pullback with zero scale");
        let alpha_inv = alpha.inv();
        let mut scale = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for p in &self.coeffs {
            out.push(p.compose_affine(alpha, beta).scale(&scale));
            scale = scale.mul(&alpha_inv);
        }
        DiffOp::from_coeffs(out)
    }

    /// Substitute x -> 1/x using d/d(1/x) = -x^2 d/dx. The result is cleared
    /// to polynomial coefficients by the minimal power of x, which is
    /// returned alongside.
    pub fn pullback_inverse(&self) -> (Self, usize) {
        let mut acc = RatOp::zero();
        let t = RatOp::from_ratfuns(vec![
            RatFun::zero(),
            RatFun::from_poly(Poly::monomial(S::from_int(-1), 2)),
        ]);
        let mut t_pow = RatOp::identity();
        for (i, p) in self.coeffs.iter().enumerate() {
            if i > 0 {
                t_pow = t.mul(&t_pow);
            }
            if p.is_zero() {
                continue;
            }
            // p(1/x) = rev(p)(x) / x^deg
            let deg = p.degree().unwrap();
            let rev = Poly::from_coeffs(p.coeffs().iter().rev().cloned().collect());
            let c = RatFun::new(rev, Poly::monomial(S::one(), deg)).expect("x^deg nonzero");
            acc = acc.add(&t_pow.scale_ratfun(&c));
        }
        let (op, mult) = acc.clear_denominators();
        let m = mult.degree().unwrap_or(0);
        (op, m)
    }

    /// True when the two operators agree up to a single overall factor in
    /// the rational-function field (cross-multiplication identity).
    pub fn proportional_to(&self, o: &Self) -> bool {
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        if self.coeffs.len() != o.coeffs.len() {
            return false;
        }
        let n = self.coeffs.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = self.coeff(i).mul(&o.coeff(j));
                let rhs = self.coeff(j).mul(&o.coeff(i));
                if lhs != rhs {
                    return false;
                }
            }
        }
        // also reject the zero-vs-nonzero coefficient pattern mismatch
        (0..n).all(|i| self.coeff(i).is_zero() == o.coeff(i).is_zero())
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DiffOp<T> {
        DiffOp::from_coeffs(self.coeffs.iter().map(|p| p.map_coeffs(&f)).collect())
    }

    /// Canonical text form: coefficients in ascending derivative order.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            match i {
                0 => parts.push(format!("({p})")),
                1 => parts.push(format!("({p})*D", p = p)),
                _ => parts.push(format!("({p})*D^{i}")),
            }
        }
        parts.join(" + ")
    }
}

impl DiffOp<Rational> {
    /// Divide all coefficients by their common polynomial divisor and make
    /// the leading polynomial's leading rational positive. Canonical up to
    /// the remaining rational content.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = Poly::zero();
        for p in &self.coeffs {
            g = g.gcd(p);
        }
        let mut out = if g.is_one() || g.is_zero() {
            self.clone()
        } else {
            DiffOp::from_coeffs(self.coeffs.iter().map(|p| p.divrem(&g).0).collect())
        };
        if let Some(lead) = out.coeffs.last().and_then(|p| p.leading()) {
            if lead.is_negative() {
                out = out.scale(&Rational::from_int(-1));
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for DiffOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl<S: Scalar> fmt::Debug for DiffOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Operator with rational-function coefficients; the working form for
/// elimination and the inverse-variable pullback.
#[derive(Clone, PartialEq)]
pub struct RatOp<S: Scalar> {
    coeffs: Vec<RatFun<S>>,
}

impl<S: Scalar> RatOp<S> {
    pub fn zero() -> Self {
        RatOp { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        RatOp { coeffs: vec![RatFun::one()] }
    }

    pub fn from_ratfuns(coeffs: Vec<RatFun<S>>) -> Self {
        let mut op = RatOp { coeffs };
        op.trim();
        op
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[RatFun<S>] {
        &self.coeffs
    }

    fn coeff(&self, i: usize) -> RatFun<S> {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatOp::from_ratfuns((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatOp::from_ratfuns((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn scale_ratfun(&self, c: &RatFun<S>) -> Self {
        RatOp::from_ratfuns(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// d/dx composed on the left: d . L = sum (c_i' d^i + c_i d^(i+1)).
    pub fn compose_derivative(&self) -> Self {
        let mut out = vec![RatFun::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(&c.derivative());
            out[i + 1] = out[i + 1].add(c);
        }
        RatOp::from_ratfuns(out)
    }

    /// Full operator product self . o (apply o first).
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = RatOp::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            // a d^i . o: repeatedly compose the derivative, then scale by a
            let mut part = o.clone();
            for _ in 0..i {
                part = part.compose_derivative();
            }
            out = out.add(&part.scale_ratfun(a));
        }
        out
    }

    /// Multiply by the least common denominator, producing polynomial
    /// coefficients; returns the operator and the multiplier used.
    pub fn clear_denominators(&self) -> (DiffOp<S>, Poly<S>) {
        let mut lcm = Poly::one();
        for c in &self.coeffs {
            let den = c.den();
            let g = lcm.gcd(den);
            lcm = lcm.mul(&den.divrem(&g).0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let (q, r) = lcm.divrem(c.den());
                debug_assert!(r.is_zero());
                c.num().mul(&q)
            })
            .collect();
        (DiffOp::from_coeffs(coeffs), lcm)
    }
}

/// Weight factors w(x) that conjugate the catalog operators.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightTag {
    /// e^(-c x^2)
    Gaussian(Rational),
    /// x^a e^(-x)
    Laguerre(Rational),
    /// x^a (1-x)^b
    Jacobi(Rational, Rational),
}

/// Polynomial-over-monomials form q(x) / (x^m_x (1-x)^m_omx).
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedOut {
    pub q: PolyQ,
    pub m_x: u32,
    pub m_one_minus_x: u32,
}

impl WeightedOut {
    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    fn reduce(mut self) -> Self {
        let x = PolyQ::var();
        while self.m_x > 0 {
            let (q, r) = self.q.divrem(&x);
            if !r.is_zero() {
                break;
            }
            self.q = q;
            self.m_x -= 1;
        }
        let omx = PolyQ::from_ints(&[1, -1]);
        while self.m_one_minus_x > 0 {
            let (q, r) = self.q.divrem(&omx);
            if !r.is_zero() {
                break;
            }
            self.q = q;
            self.m_one_minus_x -= 1;
        }
        if self.q.is_zero() {
            self.m_x = 0;
            self.m_one_minus_x = 0;
        }
        self
    }
}

/// Compute Q with D(w*P) = w * Q / (x^m (1-x)^m') as an exact identity,
/// clearing the minimal monomial denominators.
pub fn op_apply_to_weighted_poly(
    op: &DiffOp<Rational>,
    p: &PolyQ,
    weight: &WeightTag,
) -> WeightedOut {
    // log-derivative w'/w = wa/x + wb/(1-x) + linear(x)
    let (wa, wb, lin) = match weight {
        WeightTag::Gaussian(c) => (
            Rational::zero(),
            Rational::zero(),
            PolyQ::from_rationals(&[Rational::zero(), Rational::from_int(-2) * c.clone()]),
        ),
        WeightTag::Laguerre(a) => (a.clone(), Rational::zero(), PolyQ::from_ints(&[-1])),
        WeightTag::Jacobi(a, b) => (a.clone(), b.clone(), PolyQ::zero()),
    };
    let x = PolyQ::var();
    let omx = PolyQ::from_ints(&[1, -1]);

    // derivative in the representation q / (x^mx (1-x)^momx):
    // T(V) = V' + (w'/w) V, common denominator (mx+1, momx+1)
    let step = |v: &WeightedOut| -> WeightedOut {
        let q = &v.q;
        let mut num = q.derivative().mul(&x).mul(&omx);
        num = num.sub(&q.mul(&omx).scale(&Rational::from_int(v.m_x as i64)));
        num = num.add(&q.mul(&x).scale(&Rational::from_int(v.m_one_minus_x as i64)));
        num = num.sub(&q.mul(&x).scale(&wb));
        num = num.add(&q.mul(&omx).scale(&wa));
        num = num.add(&q.mul(&x).mul(&omx).mul(&lin));
        WeightedOut { q: num, m_x: v.m_x + 1, m_one_minus_x: v.m_one_minus_x + 1 }
    };

    let mut derivs = vec![WeightedOut { q: p.clone(), m_x: 0, m_one_minus_x: 0 }];
    for _ in 1..op.coeffs().len() {
        derivs.push(step(derivs.last().unwrap()));
    }

    let max_mx = derivs.last().map(|d| d.m_x).unwrap_or(0);
    let max_momx = derivs.last().map(|d| d.m_one_minus_x).unwrap_or(0);
    let mut total = PolyQ::zero();
    for (i, d) in derivs.iter().enumerate() {
        let c = op.coeff(i);
        if c.is_zero() {
            continue;
        }
        let mut t = d.q.mul(&c);
        t = t.mul(&x.pow((max_mx - d.m_x) as usize));
        t = t.mul(&omx.pow((max_momx - d.m_one_minus_x) as usize));
        total = total.add(&t);
    }
    WeightedOut { q: total, m_x: max_mx, m_one_minus_x: max_momx }.reduce()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn pullback_affine_chain_rule() {
        // d/dx under x -> 2x: (1/2) d/dx
        let d: DiffOp<Rational> = DiffOp::from_coeffs(vec![Poly::zero(), Poly::one()]);
        let pb = d.pullback_affine(&ri(2), &ri(0));
        assert_eq!(pb.coeff(1), Poly::constant(Rational::new(1, 2)));
    }

    #[test]
    fn pullback_inverse_first_and_second_order() {
        let d: DiffOp<Rational> = DiffOp::from_coeffs(vec![Poly::zero(), Poly::one()]);
        let (pb, m) = d.pullback_inverse();
        // -x^2 d/dx
        assert_eq!(m, 0);
        assert_eq!(pb.coeff(1), Poly::monomial(ri(-1), 2));

        let d2: DiffOp<Rational> =
            DiffOp::from_coeffs(vec![Poly::zero(), Poly::zero(), Poly::one()]);
        let (pb2, _) = d2.pullback_inverse();
        // x^4 d^2 + 2 x^3 d
        assert_eq!(pb2.coeff(2), Poly::monomial(ri(1), 4));
        assert_eq!(pb2.coeff(1), Poly::monomial(ri(2), 3));
    }

    #[test]
    fn pullback_functoriality() {
        // affine(alpha) then affine(1/alpha) is the identity map
        let op: DiffOp<Rational> = DiffOp::from_coeffs(vec![
            Poly::from_ints(&[1, 2]),
            Poly::from_ints(&[0, 0, 3]),
            Poly::from_ints(&[5]),
        ]);
        let alpha = Rational::new(3, 7);
        let there = op.pullback_affine(&alpha, &ri(0));
        let back = there.pullback_affine(&alpha.recip(), &ri(0));
        assert_eq!(back, op);
    }

    #[test]
    fn weighted_gaussian_derivative() {
        // d/dx acting on e^{-x^2} * 1 -> -2x e^{-x^2}
        let d: DiffOp<Rational> = DiffOp::from_coeffs(vec![Poly::zero(), Poly::one()]);
        let out = op_apply_to_weighted_poly(&d, &Poly::one(), &WeightTag::Gaussian(ri(1)));
        assert_eq!(out.q, PolyQ::from_ints(&[0, -2]));
        assert_eq!((out.m_x, out.m_one_minus_x), (0, 0));
    }

    #[test]
    fn weighted_laguerre_product_rule() {
        // d/dx (x^{a+1} e^{-x}) = x^a e^{-x} ((a+1) - x), here P = x
        let a = Rational::new(3, 2);
        let d: DiffOp<Rational> = DiffOp::from_coeffs(vec![Poly::zero(), Poly::one()]);
        let out = op_apply_to_weighted_poly(&d, &PolyQ::var(), &WeightTag::Laguerre(a.clone()));
        // expected (a+1) - x
        let expected = PolyQ::from_rationals(&[&a + &Rational::one(), ri(-1)]);
        assert_eq!(out.q, expected);
        assert_eq!((out.m_x, out.m_one_minus_x), (0, 0));
    }

    #[test]
    fn proportionality_check() {
        let op: DiffOp<Rational> =
            DiffOp::from_coeffs(vec![Poly::from_ints(&[1, 1]), Poly::from_ints(&[0, 2])]);
        let scaled = op.scale_poly(&Poly::from_ints(&[0, 0, 7]));
        assert!(op.proportional_to(&scaled));
        let other: DiffOp<Rational> =
            DiffOp::from_coeffs(vec![Poly::from_ints(&[1, 2]), Poly::from_ints(&[0, 2])]);
        assert!(!op.proportional_to(&other));
    }
}

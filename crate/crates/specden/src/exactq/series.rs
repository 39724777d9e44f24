//! Truncated series in inverse powers of x, with an optional polynomial head.
//!
//! Truncation order is data, not convention: a series knows which inverse
//! powers it is valid for, and every operation records the (possibly reduced)
//! validity of its output instead of silently truncating.

use super::poly::PolyQ;
use super::rational::Rational;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// head(x) + sum_{j=0..=order} coeffs[j] * x^(-j), exact in the stored range.
///
/// The constant term always lives in `coeffs[0]`; `head` carries strictly
/// positive powers and is exact (a polynomial head never truncates).
#[derive(Clone, PartialEq)]
pub struct InvXSeries {
    coeffs: BTreeMap<u32, Rational>,
    head: PolyQ,
    order: u32,
}

impl InvXSeries {
    pub fn zero(order: u32) -> Self {
        InvXSeries { coeffs: BTreeMap::new(), head: PolyQ::zero(), order }
    }

    pub fn new(coeffs: BTreeMap<u32, Rational>, head: PolyQ, order: u32) -> Self {
        let mut s = InvXSeries { coeffs: BTreeMap::new(), head: PolyQ::zero(), order };
        for (j, c) in coeffs {
            assert!(j <= order, "coefficient key {j} beyond truncation order {order}");
            s.add_at(-(j as i64), c);
        }
        // fold any constant part of the head into coeffs[0]
        let c0 = head.coeff(0);
        if !c0.is_zero() {
            s.add_at(0, c0);
        }
        for d in 1..=head.deg_i64().max(0) as usize {
            let c = head.coeff(d);
            if !c.is_zero() {
                s.add_at(d as i64, c);
            }
        }
        s
    }

    /// Truncation order J: x^(-j) coefficients are exact for 0 <= j <= J.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn head(&self) -> &PolyQ {
        &self.head
    }

    /// Coefficient of x^(-j); None when j exceeds the truncation order.
    pub fn coeff(&self, j: u32) -> Option<Rational> {
        if j > self.order {
            return None;
        }
        Some(self.coeffs.get(&j).cloned().unwrap_or_else(Rational::zero))
    }

    /// Coefficient of x^e for any integer exponent e (positive from the head).
    pub fn coeff_at(&self, e: i64) -> Option<Rational> {
        if e > 0 {
            Some(self.head.coeff(e as usize))
        } else {
            self.coeff((-e) as u32)
        }
    }

    fn add_at(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        if e > 0 {
            self.head = self.head.add(&PolyQ::monomial(c, e as usize));
        } else {
            let j = (-e) as u32;
            if j > self.order {
                return; // beyond validity, nothing to record
            }
            let entry = self.coeffs.entry(j).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                self.coeffs.remove(&j);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.head.is_zero()
    }

    /// Largest j <= order with a nonzero coefficient.
    pub fn last_nonzero(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut out = InvXSeries { coeffs: BTreeMap::new(), head: self.head.add(&o.head), order };
        for (j, c) in self.coeffs.iter().chain(o.coeffs.iter()) {
            if *j <= order {
                out.add_at(-(*j as i64), c.clone());
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return InvXSeries::zero(self.order);
        }
        InvXSeries {
            coeffs: self.coeffs.iter().map(|(j, v)| (*j, v * c)).collect(),
            head: self.head.scale(c),
            order: self.order,
        }
    }

    /// Restrict the validity claim to a smaller order (drops deeper terms).
    pub fn truncate(&self, order: u32) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.retain(|j, _| *j <= order);
        InvXSeries { coeffs, head: self.head.clone(), order: order.min(self.order) }
    }

    /// Exact equality of all coefficients up to the shared truncation order
    /// (heads compared exactly).
    pub fn eq_to_common_order(&self, o: &Self) -> bool {
        if self.head != o.head {
            return false;
        }
        let order = self.order.min(o.order);
        (0..=order).all(|j| self.coeff(j) == o.coeff(j))
    }

    pub fn iter_nonzero(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(j, c)| (*j, c))
    }
}

impl fmt::Display for InvXSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.head.is_zero() {
            parts.push(format!("{}", self.head));
        }
        for (j, c) in &self.coeffs {
            if *j == 0 {
                parts.push(format!("{c}"));
            } else {
                parts.push(format!("({c})*x^-{j}"));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(x^-{})", parts.join(" + "), self.order + 1)
    }
}

impl fmt::Debug for InvXSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Resolvent-style series sum_{k < J} m_k x^(-k-1) from a moment list.
pub fn series_from_moments(m: &[Rational], big_j: u32) -> InvXSeries {
    let mut s = InvXSeries::zero(big_j);
    for (k, mk) in m.iter().enumerate().take(big_j as usize) {
        s.add_at(-(k as i64 + 1), mk.clone());
    }
    s
}

/// Exact term-by-term application of a differential operator with polynomial
/// coefficients. The output truncation order is J minus the operator's
/// largest degree shift max(m - i); `TruncationTooShort` when that is
/// negative.
pub fn series_apply_diffop(op: &DiffOp<Rational>, s: &InvXSeries) -> Result<InvXSeries> {
    let mut max_shift: i64 = i64::MIN;
    for (i, p) in op.coeffs().iter().enumerate() {
        for (m, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                max_shift = max_shift.max(m as i64 - i as i64);
            }
        }
    }
    if max_shift == i64::MIN {
        // zero operator
        return Ok(InvXSeries::zero(s.order()));
    }
    let out_order = s.order() as i64 - max_shift;
    if out_order < 0 {
        return Err(Error::TruncationTooShort(format!(
            "series order {} cannot absorb operator shift {}",
            s.order(),
            max_shift
        )));
    }
    let mut out = InvXSeries::zero(out_order as u32);

    for (i, p) in op.coeffs().iter().enumerate() {
        // exact head contribution: x^m * d^i(head)
        let mut dh = s.head().clone();
        for _ in 0..i {
            dh = dh.derivative();
        }
        for (m, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !dh.is_zero() {
                for d in 0..=dh.deg_i64() as usize {
                    let hc = dh.coeff(d);
                    if !hc.is_zero() {
                        out.add_at(d as i64 + m as i64, &hc * c);
                    }
                }
            }
            // series contributions: d^i x^(-j) = (-1)^i * rising(j, i) * x^(-j-i)
            for (j, v) in s.iter_nonzero() {
                if i > 0 && j == 0 {
                    continue;
                }
                let mut factor = Rational::one();
                for t in 0..i {
                    factor *= Rational::from_int(-(j as i64 + t as i64));
                }
                let e = m as i64 - j as i64 - i as i64;
                out.add_at(e, &(v * &factor) * c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::DiffOp;
    use crate::exactq::poly::Poly;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn from_moments_basic() {
        // [1] with J = 1 -> 1/x
        let s = series_from_moments(&[Rational::one()], 1);
        assert_eq!(s.coeff(1), Some(Rational::one()));
        assert_eq!(s.coeff(0), Some(Rational::zero()));
        // GUE N=1 moments
        let s = series_from_moments(
            &[r(1, 1), r(0, 1), r(1, 2), r(0, 1)],
            4,
        );
        assert_eq!(s.coeff(1), Some(r(1, 1)));
        assert_eq!(s.coeff(3), Some(r(1, 2)));
        assert_eq!(s.coeff(2), Some(Rational::zero()));
        // empty with J = 0 -> zero series
        assert!(series_from_moments(&[], 0).is_zero());
    }

    #[test]
    fn read_back_is_identity() {
        let ms = [r(3, 1), r(-1, 2), r(7, 5)];
        let s = series_from_moments(&ms, 3);
        for (k, m) in ms.iter().enumerate() {
            assert_eq!(s.coeff(k as u32 + 1).unwrap(), m.clone());
        }
    }

    #[test]
    fn apply_derivative() {
        // d/dx on 1/x -> -x^-2
        let d = DiffOp::from_coeffs(vec![Poly::zero(), Poly::one()]);
        let s = series_from_moments(&[Rational::one()], 3);
        let out = series_apply_diffop(&d, &s).unwrap();
        assert_eq!(out.coeff(2), Some(r(-1, 1)));
        // shift of d/dx is -1, so validity grows by one
        assert_eq!(out.order(), 4);
    }

    #[test]
    fn annihilator_of_inv_x() {
        // (x d/dx + 1) on 1/x -> 0
        let d = DiffOp::from_coeffs(vec![Poly::one(), Poly::var()]);
        let s = series_from_moments(&[Rational::one()], 5);
        let out = series_apply_diffop(&d, &s).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn truncation_error() {
        let d = DiffOp::from_coeffs(vec![Poly::monomial(Rational::one(), 3)]);
        let s = series_from_moments(&[Rational::one()], 1);
        assert!(matches!(
            series_apply_diffop(&d, &s),
            Err(Error::TruncationTooShort(_))
        ));
    }
}

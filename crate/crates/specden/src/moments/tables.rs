//! Exact moment tables (numeric, symbolic-in-N, negative-index) and the
//! 1/N-expansion coefficient tables M_{k,l}.

use crate::diffop::{catalog_density_op, catalog_resolvent_rhs, EnsembleSpec, Family};
use crate::error::{Error, Result};
use crate::exactq::poly::Poly;
use crate::exactq::rational::Rational;
use crate::exactq::scalar::{RatN, Scalar};
use crate::stieltjes::{initial_moments_from_rhs, moment_recurrence_from_ode, Recurrence};
use std::collections::BTreeMap;

/// Exact spectral moments m_k indexed over the integers.
#[derive(Clone, Debug)]
pub struct MomentTable<S: Scalar> {
    pub spec: EnsembleSpec<S>,
    pub values: BTreeMap<i64, S>,
    /// recurrence id: which pipeline produced the entries
    pub provenance: String,
}

impl<S: Scalar> MomentTable<S> {
    pub fn get(&self, k: i64) -> Option<&S> {
        self.values.get(&k)
    }

    /// m_0 ... m_k as a list; panics if a value is missing.
    pub fn prefix(&self, k_max: u32) -> Vec<S> {
        (0..=k_max as i64)
            .map(|k| self.values.get(&k).expect("moment missing").clone())
            .collect()
    }
}

enum ExtendOutcome<S> {
    Done(Vec<S>),
    PivotZero { at: i64 },
}

/// Run initial moments plus the derived recurrence up to k_max. A vanishing
/// pivot is reported, not solved, so numeric callers can fall back to the
/// symbolic-in-N route.
fn extend_moments<S: Scalar>(
    spec: &EnsembleSpec<S>,
    k_max: u32,
) -> Result<(ExtendOutcome<S>, Recurrence<S>)> {
    let op = catalog_density_op(spec)?;
    let rhs = catalog_resolvent_rhs(spec)?;
    let init = initial_moments_from_rhs(&op, &rhs, &spec.n, spec.family)?;
    let rec = moment_recurrence_from_ode(&op, None);
    let gaussian = spec.family == Family::Gaussian;
    let mut m = init;
    let step = rec.step();
    let span = rec.span();
    for t in m.len() as i64..=k_max as i64 {
        if gaussian && t % 2 == 1 {
            m.push(S::zero());
            continue;
        }
        let d0 = rec.lag_coeff(0, t);
        if d0.is_zero() {
            return Ok((ExtendOutcome::PivotZero { at: t }, rec));
        }
        let mut acc = S::zero();
        for l in 1..=span {
            let idx = t - (l * step) as i64;
            let c = rec.lag_coeff(l, t);
            if idx < 0 {
                assert!(
                    c.is_zero(),
                    "negative moment index {idx} carries a nonzero coefficient"
                );
                continue;
            }
            if !c.is_zero() {
                acc = acc.add(&c.mul(&m[idx as usize]));
            }
        }
        m.push(acc.neg().div(&d0));
    }
    m.truncate(k_max as usize + 1);
    Ok((ExtendOutcome::Done(m), rec))
}

/// Exact moments m_0 ... m_{k_max} for a numeric ensemble. A vanishing
/// recurrence pivot (possible at integer Jacobi parameters) is resolved by
/// computing the table symbolically in N and evaluating: the moments are
/// rational functions of N with no pole at the ensemble size.
pub fn moments_exact(spec: &EnsembleSpec<Rational>, k_max: u32) -> Result<MomentTable<Rational>> {
    spec.validate()?;
    let (outcome, _) = extend_moments(spec, k_max)?;
    match outcome {
        ExtendOutcome::Done(m) => Ok(MomentTable {
            spec: spec.clone(),
            values: m.into_iter().enumerate().map(|(k, v)| (k as i64, v)).collect(),
            provenance: "ode-recurrence".into(),
        }),
        ExtendOutcome::PivotZero { at } => {
            let sym_spec = spec.lift_symbolic();
            let sym = moments_exact_symbolic(&sym_spec, k_max)?;
            let values = sym
                .values
                .iter()
                .map(|(k, v)| (*k, v.eval(&spec.n)))
                .collect();
            Ok(MomentTable {
                spec: spec.clone(),
                values,
                provenance: format!("ode-recurrence/symbolic-N (pivot zero at k = {at})"),
            })
        }
    }
}

/// Symbolic-in-N moments; pivots are rational functions of N and never
/// vanish identically for the catalog families.
pub fn moments_exact_symbolic(
    spec: &EnsembleSpec<RatN>,
    k_max: u32,
) -> Result<MomentTable<RatN>> {
    let (outcome, _) = extend_moments(spec, k_max)?;
    match outcome {
        ExtendOutcome::Done(m) => Ok(MomentTable {
            spec: spec.clone(),
            values: m.into_iter().enumerate().map(|(k, v)| (k as i64, v)).collect(),
            provenance: "ode-recurrence/symbolic-N".into(),
        }),
        ExtendOutcome::PivotZero { at } => Err(Error::SingularSystem(format!(
            "symbolic pivot vanished identically at k = {at}"
        ))),
    }
}

/// Downward recurrence for the negative moments m_{-1} ... m_{k_min}
/// (k_min < 0), gated by the convergence condition |k| < a + 1.
pub fn moments_negative(
    spec: &EnsembleSpec<Rational>,
    k_min: i64,
) -> Result<MomentTable<Rational>> {
    spec.validate()?;
    if spec.family == Family::Gaussian {
        return Err(Error::DivergentMoment { k: k_min });
    }
    if k_min >= 0 {
        return Err(Error::InvalidParameter("k_min must be negative".into()));
    }
    // gate: m_{-j} converges iff j < a + 1
    let worst = Rational::from_int(-k_min);
    if !(worst < &spec.a + &Rational::one()) {
        return Err(Error::DivergentMoment { k: k_min });
    }
    let op = catalog_density_op(spec)?;
    let rec = moment_recurrence_from_ode(&op, None);
    let span = rec.span();
    let step = rec.step();
    let reach = (span * step) as i64;
    // positive part first, far enough to seed the downward walk
    let table = moments_exact(spec, (reach - 1).max(0) as u32)?;
    let mut values = table.values;
    for j in 1..=(-k_min) {
        let target = -j;
        let t = target + reach; // relation whose lowest index is the target
        let pivot = rec.lag_coeff(span, t);
        if pivot.is_zero() {
            return Err(Error::SingularSystem(format!(
                "downward pivot vanished at m_{target}"
            )));
        }
        let mut acc = Rational::zero();
        for l in 0..span {
            let idx = t - (l * step) as i64;
            let c = rec.lag_coeff(l, t);
            if !c.is_zero() {
                let v = values
                    .get(&idx)
                    .ok_or_else(|| Error::RangeTooSmall(format!("need m_{idx}")))?;
                acc += &c * v;
            }
        }
        values.insert(target, -(acc / pivot));
    }
    Ok(MomentTable { spec: spec.clone(), values, provenance: "ode-recurrence/downward".into() })
}

/// Which 1/N structure the expansion coefficients follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffShape {
    /// m_{2k} = sum_l M_{k,l} N^(k-l+1)
    Gaussian,
    /// m_k = sum_l M_{k,l} N^(k-l+1)
    Laguerre,
    /// m_k = sum_l M_{k,l} N^(1-l), truncated at l_max
    Jacobi,
}

/// Expansion coefficients M_{k,l} with the parameter scaling recorded.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    pub family: Family,
    pub beta: Rational,
    pub alpha1: Rational,
    pub delta1: Rational,
    pub alpha2: Rational,
    pub shape: CoeffShape,
    pub k_max: u32,
    pub l_max: u32,
    entries: BTreeMap<(u32, u32), Rational>,
}

impl CoeffTable {
    /// M_{k,l}, with absent entries meaning exact zero inside the computed
    /// range and None outside it.
    pub fn get(&self, k: i64, l: i64) -> Option<Rational> {
        if k < 0 || l < 0 {
            return Some(Rational::zero());
        }
        let (k, l) = (k as u32, l as u32);
        match self.shape {
            CoeffShape::Gaussian | CoeffShape::Laguerre => {
                if k > self.k_max {
                    return None;
                }
                if l > k {
                    return Some(Rational::zero());
                }
                if l > self.l_max {
                    return None;
                }
            }
            CoeffShape::Jacobi => {
                if k > self.k_max || l > self.l_max {
                    return None;
                }
            }
        }
        Some(self.entries.get(&(k, l)).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.entries
    }

    /// Construct from explicit entries (used by the CLI round-trip path).
    pub fn from_parts(
        family: Family,
        beta: Rational,
        alpha1: Rational,
        delta1: Rational,
        alpha2: Rational,
        shape: CoeffShape,
        k_max: u32,
        l_max: u32,
        entries: BTreeMap<(u32, u32), Rational>,
    ) -> Self {
        CoeffTable { family, beta, alpha1, delta1, alpha2, shape, k_max, l_max, entries }
    }
}

/// Build the coefficient table for the scaling a = alpha1 N + delta1,
/// b = alpha2 N by expanding the symbolic-in-N moments.
pub fn coeff_table(
    family: Family,
    beta: Rational,
    alpha1: Rational,
    delta1: Rational,
    alpha2: Rational,
    k_max: u32,
    l_max: u32,
) -> Result<CoeffTable> {
    let n = RatN::var();
    let a = RatN::from_poly(Poly::from_rationals(&[delta1.clone(), alpha1.clone()]));
    let b = RatN::from_poly(Poly::from_rationals(&[Rational::zero(), alpha2.clone()]));
    let spec = match family {
        Family::Gaussian => EnsembleSpec::gaussian(beta.clone(), n),
        Family::Laguerre => EnsembleSpec::laguerre(beta.clone(), n, a),
        Family::Jacobi => EnsembleSpec::jacobi(beta.clone(), n, a, b),
    };
    let shape = match family {
        Family::Gaussian => CoeffShape::Gaussian,
        Family::Laguerre => CoeffShape::Laguerre,
        Family::Jacobi => CoeffShape::Jacobi,
    };
    let moment_k_max = if family == Family::Gaussian { 2 * k_max } else { k_max };
    let table = moments_exact_symbolic(&spec, moment_k_max)?;

    let mut entries = BTreeMap::new();
    for k in 0..=k_max {
        let idx = if family == Family::Gaussian { 2 * k as i64 } else { k as i64 };
        let mk = table.get(idx).expect("symbolic moment missing");
        match shape {
            CoeffShape::Gaussian | CoeffShape::Laguerre => {
                let p = mk.as_poly().ok_or_else(|| {
                    Error::StructureMismatch(format!(
                        "moment m_{idx} is not polynomial in N under this scaling"
                    ))
                })?;
                // m = sum_l M_{k,l} N^(k+1-l): powers k+1 down to 1
                if p.deg_i64() > k as i64 + 1 || !p.coeff(0).is_zero() {
                    return Err(Error::StructureMismatch(format!(
                        "moment m_{idx} does not have the N^(k-l+1) shape"
                    )));
                }
                for l in 0..=k {
                    let c = p.coeff((k + 1 - l) as usize);
                    if !c.is_zero() {
                        entries.insert((k, l), c);
                    }
                }
            }
            CoeffShape::Jacobi => {
                // exact long division in u = 1/N with guard terms
                let coeffs = inv_n_series(mk, l_max as usize + 4)?;
                for l in 0..=l_max {
                    let c = &coeffs[l as usize];
                    if !c.is_zero() {
                        entries.insert((k, l), c.clone());
                    }
                }
            }
        }
    }
    Ok(CoeffTable {
        family,
        beta,
        alpha1,
        delta1,
        alpha2,
        shape,
        k_max,
        l_max,
        entries,
    })
}

/// 1/N expansion of a rational function with m ~ M_0 N: returns
/// [M_0, M_1, ...] with m = sum_l M_l N^(1-l), to `terms` coefficients.
fn inv_n_series(m: &RatN, terms: usize) -> Result<Vec<Rational>> {
    if Scalar::is_zero(m) {
        return Ok(vec![Rational::zero(); terms]);
    }
    let num = m.num();
    let den = m.den();
    let dn = num.deg_i64();
    let dd = den.deg_i64();
    if dn != dd + 1 {
        return Err(Error::StructureMismatch(format!(
            "expected m ~ c N, found degrees {dn}/{dd}"
        )));
    }
    // reversed-coefficient power series in u = 1/N
    let rev = |p: &Poly<Rational>| -> Vec<Rational> {
        let d = p.deg_i64() as usize;
        (0..=d).map(|i| p.coeff(d - i)).collect()
    };
    let a = rev(num);
    let b = rev(den);
    let b0 = b[0].clone();
    assert!(!b0.is_zero());
    let mut q: Vec<Rational> = Vec::with_capacity(terms);
    for i in 0..terms {
        let mut acc = a.get(i).cloned().unwrap_or_else(Rational::zero);
        for j in 0..i {
            let bj = b.get(i - j).cloned().unwrap_or_else(Rational::zero);
            if !bj.is_zero() {
                acc -= &q[j] * &bj;
            }
        }
        q.push(&acc / &b0);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn gue_symbolic_fourth_moment() {
        // m_4 = (2N^3 + N)/4 for w = e^{-x^2}
        let spec = EnsembleSpec::gaussian(ri(2), RatN::var());
        let t = moments_exact_symbolic(&spec, 4).unwrap();
        let m4 = t.get(4).unwrap();
        let expect = Poly::from_rationals(&[
            Rational::zero(),
            Rational::new(1, 4),
            Rational::zero(),
            Rational::new(1, 2),
        ]);
        assert_eq!(m4.as_poly().unwrap(), &expect);
        // odd moments vanish identically
        assert!(Scalar::is_zero(t.get(3).unwrap()));
    }

    #[test]
    fn jue_uniform_and_lue_examples() {
        // JUE a=b=0, N=1: m_3 = 1/4 (uniform on (0,1)); hits the degenerate
        // pivot at k = 3 and exercises the symbolic fallback
        let spec = EnsembleSpec::jacobi(ri(2), ri(1), ri(0), ri(0));
        let t = moments_exact(&spec, 8).unwrap();
        for k in 0..=8i64 {
            assert_eq!(t.get(k).unwrap(), &Rational::new(1, k + 1), "k = {k}");
        }
        assert!(t.provenance.contains("pivot zero"));

        // LUE a=2, N=1: m_1 = 3
        let spec = EnsembleSpec::laguerre(ri(2), ri(1), ri(2));
        let t = moments_exact(&spec, 4).unwrap();
        assert_eq!(t.get(1).unwrap(), &ri(3));

        // LUE a=0, N=1: m_k = k!
        let spec = EnsembleSpec::laguerre(ri(2), ri(1), ri(0));
        let t = moments_exact(&spec, 4).unwrap();
        assert_eq!(t.get(4).unwrap(), &ri(24));
    }

    #[test]
    fn negative_moment_examples() {
        // LUE a=2, N=1: m_{-1} = 1/2
        let spec = EnsembleSpec::laguerre(ri(2), ri(1), ri(2));
        let t = moments_negative(&spec, -1).unwrap();
        assert_eq!(t.get(-1).unwrap(), &Rational::new(1, 2));

        // LUE a=5, N=2: m_{-1} = m_0 / a = 2/5
        let spec = EnsembleSpec::laguerre(ri(2), ri(2), ri(5));
        let t = moments_negative(&spec, -1).unwrap();
        assert_eq!(t.get(-1).unwrap(), &Rational::new(2, 5));

        // LUE a=1: m_{-2} diverges
        let spec = EnsembleSpec::laguerre(ri(2), ri(1), ri(1));
        assert!(matches!(
            moments_negative(&spec, -2),
            Err(Error::DivergentMoment { .. })
        ));
    }

    #[test]
    fn gue_coeff_table_catalan() {
        let t = coeff_table(
            Family::Gaussian,
            ri(2),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            10,
            10,
        )
        .unwrap();
        assert_eq!(t.get(1, 0).unwrap(), Rational::new(1, 2));
        assert_eq!(t.get(2, 0).unwrap(), Rational::new(1, 2));
        assert_eq!(t.get(2, 2).unwrap(), Rational::new(1, 4));
        // M_{k,0} = C_k / 2^k
        let mut catalan = vec![ri(1)];
        for k in 1..=10usize {
            let prev = catalan[k - 1].clone();
            catalan.push(&prev * &Rational::new(2 * (2 * k as i64 - 1), k as i64 + 1));
        }
        for k in 0..=10u32 {
            let expect = &catalan[k as usize] / &Rational::from_int(2).pow(k as i32);
            assert_eq!(t.get(k as i64, 0).unwrap(), expect, "k = {k}");
        }
    }

    #[test]
    fn lue_coeff_table_catalan_recursion() {
        // a = O(1) (alpha1 = 0): M_{k,0} = 2(2k-1)/(k+1) M_{k-1,0}
        let t = coeff_table(
            Family::Laguerre,
            ri(2),
            Rational::zero(),
            ri(1),
            Rational::zero(),
            10,
            10,
        )
        .unwrap();
        for k in 1..=10i64 {
            let lhs = t.get(k, 0).unwrap();
            let rhs = &t.get(k - 1, 0).unwrap() * &Rational::new(2 * (2 * k - 1), k + 1);
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn jue_inv_n_expansion() {
        // a=b=0: m_2 = N(3N^2-1)/(2(4N^2-1)): M_{2,0} = 3/8, M_{2,2} = -1/32
        let t = coeff_table(
            Family::Jacobi,
            ri(2),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            4,
            6,
        )
        .unwrap();
        assert_eq!(t.get(2, 0).unwrap(), Rational::new(3, 8));
        assert_eq!(t.get(2, 1).unwrap(), Rational::zero());
        assert_eq!(t.get(2, 2).unwrap(), Rational::new(-1, 32));
        assert_eq!(t.get(2, 4).unwrap(), Rational::new(-1, 128));
    }
}

//! Brute-force moments for even beta at tiny N: expand the Vandermonde power
//! symbolically and integrate monomials against the product weight.

use super::cd::weight_moment;
use crate::diffop::{EnsembleSpec, Family};
use crate::error::{Error, Result};
use crate::exactq::rational::Rational;
use crate::moments::MomentTable;
use std::collections::BTreeMap;

const TERM_LIMIT: usize = 200_000;

/// Multiply the expansion by (x_i - x_j)^beta, term by term.
fn mul_vandermonde_factor(
    terms: BTreeMap<[u16; 3], Rational>,
    i: usize,
    j: usize,
    beta: u32,
) -> Result<BTreeMap<[u16; 3], Rational>> {
    // (x_i - x_j)^beta = sum_t C(beta, t) x_i^t (-x_j)^(beta - t)
    let mut binom = vec![Rational::one()];
    for t in 1..=beta as i64 {
        let prev = binom.last().unwrap().clone();
        binom.push(prev * Rational::new(beta as i64 - t + 1, t));
    }
    let mut out: BTreeMap<[u16; 3], Rational> = BTreeMap::new();
    for (expo, c) in &terms {
        for t in 0..=beta as usize {
            let mut e = *expo;
            e[i] += t as u16;
            e[j] += (beta as usize - t) as u16;
            let mut coef = c * &binom[t];
            if (beta as usize - t) % 2 == 1 {
                coef = -coef;
            }
            let entry = out.entry(e).or_insert_with(Rational::zero);
            *entry += coef;
            if entry.is_zero() {
                out.remove(&e);
            }
        }
        if out.len() > TERM_LIMIT {
            return Err(Error::SizeLimit(format!(
                "Vandermonde expansion exceeded {TERM_LIMIT} terms"
            )));
        }
    }
    Ok(out)
}

/// Exact moments m_0 ... m_{k_max} by direct expansion; beta in {2, 4, 6}
/// and N <= 3.
pub fn moments_bruteforce(
    spec: &EnsembleSpec<Rational>,
    k_max: u32,
) -> Result<MomentTable<Rational>> {
    spec.validate()?;
    let beta = spec
        .beta
        .to_i64()
        .filter(|b| matches!(b, 2 | 4 | 6))
        .ok_or_else(|| Error::UnsupportedBeta("brute force needs beta in {2,4,6}".into()))?
        as u32;
    let n = spec
        .n
        .to_i64()
        .filter(|&n| (1..=3).contains(&n))
        .ok_or_else(|| Error::InvalidParameter("brute force needs integer N <= 3".into()))?
        as usize;

    let mut terms: BTreeMap<[u16; 3], Rational> = BTreeMap::new();
    terms.insert([0, 0, 0], Rational::one());
    for j in 0..n {
        for i in (j + 1)..n {
            terms = mul_vandermonde_factor(terms, i, j, beta)?;
        }
    }

    let mom = |m: usize| weight_moment(spec.family, &spec.a, &spec.b, m);
    // normalizer Z' = sum over terms of c * prod_i mu(e_i)
    let mut z = Rational::zero();
    for (e, c) in &terms {
        let mut prod = c.clone();
        for i in 0..n {
            prod = prod * mom(e[i] as usize);
        }
        z += prod;
    }
    if z.is_zero() {
        return Err(Error::SingularSystem("vanishing normalization".into()));
    }
    let mut values = BTreeMap::new();
    for k in 0..=k_max as usize {
        let mut acc = Rational::zero();
        for (e, c) in &terms {
            for pick in 0..n {
                let mut prod = c.clone();
                for i in 0..n {
                    let m = e[i] as usize + if i == pick { k } else { 0 };
                    prod = prod * mom(m);
                }
                acc += prod;
            }
        }
        values.insert(k as i64, acc / z.clone());
    }
    Ok(MomentTable { spec: spec.clone(), values, provenance: "vandermonde-bruteforce".into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn gue_n2_second_moment() {
        let spec = EnsembleSpec::gaussian(ri(2), ri(2));
        let t = moments_bruteforce(&spec, 4).unwrap();
        assert_eq!(t.get(2).unwrap(), &ri(2)); // N^2/2 = 2
        assert_eq!(t.get(0).unwrap(), &ri(2));
        assert_eq!(t.get(1).unwrap(), &ri(0));
    }

    #[test]
    fn beta4_n1_reduces_to_weight_moments() {
        let spec = EnsembleSpec::laguerre(ri(4), ri(1), ri(1));
        let t = moments_bruteforce(&spec, 3).unwrap();
        // single variable: m_k = (a+1)_k
        assert_eq!(t.get(1).unwrap(), &ri(2));
        assert_eq!(t.get(2).unwrap(), &ri(6));
        assert_eq!(t.get(3).unwrap(), &ri(24));
    }

    #[test]
    fn jacobi_symmetry_m1() {
        let spec = EnsembleSpec::jacobi(ri(2), ri(2), ri(0), ri(0));
        let t = moments_bruteforce(&spec, 1).unwrap();
        assert_eq!(t.get(1).unwrap(), &ri(1)); // N/2 by symmetry
    }

    #[test]
    fn agrees_with_recurrence_pipeline() {
        use crate::moments::moments_exact;
        for (spec, kmax) in [
            (EnsembleSpec::gaussian(ri(2), ri(3)), 8u32),
            (EnsembleSpec::gaussian(ri(4), ri(2)), 8),
            (EnsembleSpec::gaussian(ri(6), ri(2)), 6),
            (EnsembleSpec::laguerre(ri(2), ri(3), Rational::new(1, 2)), 8),
            (EnsembleSpec::laguerre(ri(4), ri(2), ri(1)), 8),
            (EnsembleSpec::jacobi(ri(2), ri(2), ri(1), ri(2)), 8),
            (EnsembleSpec::jacobi(ri(4), ri(2), ri(1), Rational::new(1, 2)), 8),
        ] {
            let brute = moments_bruteforce(&spec, kmax).unwrap();
            let rec = moments_exact(&spec, kmax).unwrap();
            for k in 0..=kmax as i64 {
                assert_eq!(
                    brute.get(k).unwrap(),
                    rec.get(k).unwrap(),
                    "family {:?} beta {} k {k}",
                    spec.family,
                    spec.beta
                );
            }
        }
    }
}

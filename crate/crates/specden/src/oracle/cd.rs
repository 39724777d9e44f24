//! Christoffel-Darboux densities: the beta = 2 one-point density as a
//! weight times an exactly computed polynomial.
//!
//! The orthonormal-polynomial data comes from the weight's moment sequence
//! through the Chebyshev algorithm, so one exact code path serves all three
//! weights and there is no transcription of recurrence tables to trust.

use crate::diffop::{EnsembleSpec, Family, WeightTag};
use crate::error::{Error, Result};
use crate::exactq::poly::{Poly, PolyQ};
use crate::exactq::rational::Rational;
use statrs::function::gamma::ln_gamma;

/// Normalization constant class of the weight integral, tracked symbolically
/// and evaluated to binary64 only on demand.
#[derive(Clone, Debug, PartialEq)]
pub enum NormClass {
    /// integral of e^(-x^2): sqrt(pi)
    SqrtPi,
    /// integral of x^a e^(-x): Gamma(a+1)
    Gamma(Rational),
    /// integral of x^a (1-x)^b on (0,1): B(a+1, b+1)
    Beta(Rational, Rational),
}

impl NormClass {
    pub fn to_f64(&self) -> f64 {
        match self {
            NormClass::SqrtPi => std::f64::consts::PI.sqrt(),
            NormClass::Gamma(a) => (ln_gamma(a.to_f64() + 1.0)).exp(),
            NormClass::Beta(a, b) => {
                let (a, b) = (a.to_f64(), b.to_f64());
                (ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp()
            }
        }
    }
}

/// rho(x) = w(x) P(x) / Z with P exact; integrates to N.
#[derive(Clone, Debug)]
pub struct CDKernelDensity {
    pub spec: EnsembleSpec<Rational>,
    pub p: PolyQ,
    pub norm: NormClass,
    /// monic three-term recurrence data (alpha_k, beta_k) used to build P
    pub alphas: Vec<Rational>,
    pub betas: Vec<Rational>,
}

/// Moments of the weight normalized by its own mass: int x^m w / int w.
pub fn weight_moment(family: Family, a: &Rational, b: &Rational, m: usize) -> Rational {
    match family {
        Family::Gaussian => {
            if m % 2 == 1 {
                Rational::zero()
            } else {
                // (m-1)!! / 2^(m/2)
                let mut acc = Rational::one();
                let mut j = m as i64 - 1;
                while j >= 1 {
                    acc = acc * Rational::from_int(j);
                    j -= 2;
                }
                acc / Rational::from_int(2).pow((m / 2) as i32)
            }
        }
        Family::Laguerre => {
            let mut acc = Rational::one();
            for j in 0..m as i64 {
                acc = acc * (&(a + &Rational::one()) + &Rational::from_int(j));
            }
            acc
        }
        Family::Jacobi => {
            let mut acc = Rational::one();
            for j in 0..m as i64 {
                let num = &(a + &Rational::one()) + &Rational::from_int(j);
                let den = &(&(a + b) + &Rational::from_int(2)) + &Rational::from_int(j);
                acc = acc * (num / den);
            }
            acc
        }
    }
}

/// Monic recurrence p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1} from the
/// first 2n moments (Chebyshev algorithm, exact arithmetic).
fn chebyshev_recurrence(mu: &[Rational], n: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    assert!(mu.len() >= 2 * n, "need 2n moments");
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut alphas = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n);
    // sigma[k][l] = <p_k, x^l>
    let mut prev: Vec<Rational> = Vec::new();
    let mut cur: Vec<Rational> = mu.to_vec();
    alphas.push(&mu[1] / &mu[0]);
    betas.push(mu[0].clone());
    for k in 1..n {
        let mut next = vec![Rational::zero(); 2 * n];
        for l in k..=(2 * n - k - 1) {
            let mut v = cur[l + 1].clone();
            v -= &alphas[k - 1] * &cur[l];
            if k >= 2 {
                v -= &betas[k - 1] * &prev[l];
            }
            next[l] = v;
        }
        if next[k].is_zero() {
            return Err(Error::SingularSystem(format!(
                "Chebyshev algorithm: zero diagonal at step {k}"
            )));
        }
        let alpha = &(&next[k + 1] / &next[k]) - &(&cur[k] / &cur[k - 1]);
        let beta = &next[k] / &cur[k - 1];
        alphas.push(alpha);
        betas.push(beta);
        prev = cur;
        cur = next;
    }
    Ok((alphas, betas))
}

/// Build the exact density polynomial for a beta = 2 spec with N <= 12.
pub fn cd_density(spec: &EnsembleSpec<Rational>) -> Result<CDKernelDensity> {
    if spec.beta != Rational::from_int(2) {
        return Err(Error::UnsupportedBeta(
            "Christoffel-Darboux densities exist at beta = 2 only".into(),
        ));
    }
    spec.validate()?;
    let n = spec
        .n
        .to_i64()
        .filter(|&n| n >= 1 && n <= 12)
        .ok_or_else(|| Error::InvalidParameter("cd_density needs integer 1 <= N <= 12".into()))?
        as usize;
    let mu: Vec<Rational> = (0..2 * n.max(1))
        .map(|m| weight_moment(spec.family, &spec.a, &spec.b, m))
        .collect();
    let (alphas, betas) = chebyshev_recurrence(&mu, n)?;
    // monic polynomials and their squared norms h_k = beta_0 beta_1 ... beta_k
    let mut p_prev = PolyQ::zero();
    let mut p_cur = PolyQ::one();
    let mut h = Rational::one(); // normalized: h_0 = mu_0 = 1
    let mut total = PolyQ::zero();
    for k in 0..n {
        total = total.add(&p_cur.mul(&p_cur).scale(&h.recip()));
        // advance
        let lin = PolyQ::from_rationals(&[-&alphas[k] + &Rational::zero(), Rational::one()]);
        let mut p_next = lin.mul(&p_cur);
        if k >= 1 {
            p_next = p_next.sub(&p_prev.scale(&betas[k]));
        }
        if k + 1 < n {
            h = &h * &betas[k + 1];
        }
        p_prev = p_cur;
        p_cur = p_next;
    }
    let norm = match spec.family {
        Family::Gaussian => NormClass::SqrtPi,
        Family::Laguerre => NormClass::Gamma(spec.a.clone()),
        Family::Jacobi => NormClass::Beta(spec.a.clone(), spec.b.clone()),
    };
    let density = CDKernelDensity { spec: spec.clone(), p: total, norm, alphas, betas };
    // mass check: the exact moments integrate P against the weight
    debug_assert_eq!(density.moment(0), spec.n);
    Ok(density)
}

impl CDKernelDensity {
    pub fn weight_tag(&self) -> WeightTag {
        match self.spec.family {
            Family::Gaussian => WeightTag::Gaussian(Rational::one()),
            Family::Laguerre => WeightTag::Laguerre(self.spec.a.clone()),
            Family::Jacobi => WeightTag::Jacobi(self.spec.a.clone(), self.spec.b.clone()),
        }
    }

    /// Exact spectral moment m_k = int x^k rho.
    pub fn moment(&self, k: usize) -> Rational {
        let mut acc = Rational::zero();
        for (j, c) in self.p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += c * &weight_moment(self.spec.family, &self.spec.a, &self.spec.b, j + k);
            }
        }
        acc
    }

    /// Binary64 density value.
    pub fn eval(&self, x: f64) -> f64 {
        let w = match self.spec.family {
            Family::Gaussian => (-x * x).exp(),
            Family::Laguerre => {
                if x <= 0.0 {
                    return 0.0;
                }
                (self.spec.a.to_f64() * x.ln() - x).exp()
            }
            Family::Jacobi => {
                if x <= 0.0 || x >= 1.0 {
                    return 0.0;
                }
                (self.spec.a.to_f64() * x.ln() + self.spec.b.to_f64() * (1.0 - x).ln()).exp()
            }
        };
        w * self.p.eval_f64(x) / self.norm.to_f64()
    }

    /// Density and derivatives up to `order`, computed from the exact
    /// polynomial and the closed-form log-derivative of the weight.
    pub fn eval_derivs(&self, x: f64, order: usize) -> Vec<f64> {
        // rho = w * P / Z: rho^(i) = w * Q_i / Z with Q_0 = P and
        // Q_{i+1} = Q_i' + (w'/w) Q_i; differentiate numerically exactly in
        // the polynomial algebra over Q with the rational log-derivative.
        let tag = self.weight_tag();
        let mut out = Vec::with_capacity(order + 1);
        // represent Q_i as q / (x^mx (1-x)^momx)
        let x_poly = PolyQ::var();
        let omx = PolyQ::from_ints(&[1, -1]);
        let (wa, wb, lin) = match &tag {
            WeightTag::Gaussian(c) => (
                Rational::zero(),
                Rational::zero(),
                PolyQ::from_rationals(&[Rational::zero(), Rational::from_int(-2) * c.clone()]),
            ),
            WeightTag::Laguerre(a) => (a.clone(), Rational::zero(), PolyQ::from_ints(&[-1])),
            WeightTag::Jacobi(a, b) => (a.clone(), b.clone(), PolyQ::zero()),
        };
        let mut q = self.p.clone();
        let mut mx = 0i64;
        let w_over_z = self.eval_weight_over_norm(x);
        for i in 0..=order {
            let denom = match self.spec.family {
                Family::Gaussian => 1.0,
                Family::Laguerre => x.powi(mx as i32),
                Family::Jacobi => (x * (1.0 - x)).powi(mx as i32),
            };
            out.push(w_over_z * q.eval_f64(x) / denom);
            if i == order {
                break;
            }
            // advance in the common-denominator representation
            let next = match self.spec.family {
                Family::Gaussian => q.derivative().add(&q.mul(&lin)),
                Family::Laguerre => {
                    // (q/x^m)' + (a/x - 1)(q/x^m)
                    let mut num = q.derivative().mul(&x_poly);
                    num = num.sub(&q.scale(&Rational::from_int(mx)));
                    num = num.add(&q.scale(&wa));
                    num = num.sub(&q.mul(&x_poly));
                    num
                }
                Family::Jacobi => {
                    // common denominator (x(1-x))^m
                    let xomx = x_poly.mul(&omx);
                    let mut num = q.derivative().mul(&xomx);
                    // -(m) q (x(1-x))' = -m q (1-2x)
                    num = num.sub(
                        &q.mul(&PolyQ::from_ints(&[1, -2])).scale(&Rational::from_int(mx)),
                    );
                    num = num.add(&q.mul(&omx).scale(&wa));
                    num = num.sub(&q.mul(&x_poly).scale(&wb));
                    num
                }
            };
            q = next;
            if self.spec.family != Family::Gaussian {
                mx += 1;
            }
        }
        out
    }

    fn eval_weight_over_norm(&self, x: f64) -> f64 {
        let logz = match &self.norm {
            NormClass::SqrtPi => 0.5 * std::f64::consts::PI.ln(),
            NormClass::Gamma(a) => ln_gamma(a.to_f64() + 1.0),
            NormClass::Beta(a, b) => {
                let (a, b) = (a.to_f64(), b.to_f64());
                ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)
            }
        };
        match self.spec.family {
            Family::Gaussian => (-x * x - logz).exp(),
            Family::Laguerre => (self.spec.a.to_f64() * x.ln() - x - logz).exp(),
            Family::Jacobi => {
                (self.spec.a.to_f64() * x.ln() + self.spec.b.to_f64() * (1.0 - x).ln() - logz)
                    .exp()
            }
        }
    }
}

/// Numerically stable GUE density (weight e^(-x^2)) for large N, via the
/// orthonormal Hermite-function recurrence; used by the edge-convergence
/// checks where the exact polynomial would be evaluated far out of range.
pub fn gue_density_stable(n: usize, x: f64) -> f64 {
    let mut h_prev = 0.0f64;
    let mut h_cur = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    let mut sum = h_cur * h_cur;
    for k in 0..n - 1 {
        let kf = k as f64;
        let h_next = x * (2.0 / (kf + 1.0)).sqrt() * h_cur - (kf / (kf + 1.0)).sqrt() * h_prev;
        h_prev = h_cur;
        h_cur = h_next;
        sum += h_cur * h_cur;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::{catalog_density_op, op_apply_to_weighted_poly};

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn gue_small_polynomials() {
        // N=1: P = 1
        let spec = EnsembleSpec::gaussian(ri(2), ri(1));
        let d = cd_density(&spec).unwrap();
        assert_eq!(d.p, PolyQ::one());
        // N=2: P = 1 + 2x^2 (phi_0^2 + phi_1^2 with h_1 = 1/2)
        let spec = EnsembleSpec::gaussian(ri(2), ri(2));
        let d = cd_density(&spec).unwrap();
        assert_eq!(d.p, PolyQ::from_ints(&[1, 0, 2]));
        assert_eq!(d.moment(0), ri(2));
        assert_eq!(d.moment(2), ri(2)); // N^2/2
    }

    #[test]
    fn lue_and_jue_mass() {
        let spec = EnsembleSpec::laguerre(ri(2), ri(3), Rational::new(1, 2));
        let d = cd_density(&spec).unwrap();
        assert_eq!(d.moment(0), ri(3));
        let spec = EnsembleSpec::jacobi(ri(2), ri(4), ri(1), ri(2));
        let d = cd_density(&spec).unwrap();
        assert_eq!(d.moment(0), ri(4));
        // m_1 + m_1(swapped) = N by reflection symmetry
        let swapped = EnsembleSpec::jacobi(ri(2), ri(4), ri(2), ri(1));
        let ds = cd_density(&swapped).unwrap();
        assert_eq!(&d.moment(1) + &ds.moment(1), ri(4));
    }

    #[test]
    fn annihilation_by_catalog_operator() {
        // beta = 2 catalog operators annihilate w * P exactly
        for spec in [
            EnsembleSpec::gaussian(ri(2), ri(3)),
            EnsembleSpec::laguerre(ri(2), ri(2), Rational::new(1, 2)),
            EnsembleSpec::jacobi(ri(2), ri(2), ri(1), ri(3)),
        ] {
            let d = cd_density(&spec).unwrap();
            let op = catalog_density_op(&spec).unwrap();
            let out = op_apply_to_weighted_poly(&op, &d.p, &d.weight_tag());
            assert!(out.is_zero(), "residual {:?} for {:?}", out.q, spec.family);
        }
    }

    #[test]
    fn stable_evaluation_matches_exact() {
        let spec = EnsembleSpec::gaussian(ri(2), ri(6));
        let d = cd_density(&spec).unwrap();
        for x in [-2.0, -0.5, 0.0, 1.0, 2.5] {
            let exact = d.eval(x);
            let stable = gue_density_stable(6, x);
            assert!((exact - stable).abs() < 1e-10 * stable.max(1.0));
        }
    }

    #[test]
    fn derivative_evaluation() {
        let spec = EnsembleSpec::jacobi(ri(2), ri(2), ri(1), ri(1));
        let d = cd_density(&spec).unwrap();
        // compare eval_derivs order-1 against a central difference
        let x = 0.4;
        let h = 1e-6;
        let fd = (d.eval(x + h) - d.eval(x - h)) / (2.0 * h);
        let an = d.eval_derivs(x, 1)[1];
        assert!((fd - an).abs() < 1e-6 * (1.0 + an.abs()), "fd {fd} vs {an}");
    }
}

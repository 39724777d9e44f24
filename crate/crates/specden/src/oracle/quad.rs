//! Two-dimensional adaptive quadrature oracle for beta = 1, N = 2 moments.
//!
//! The |x - y| factor breaks polynomiality, so this is the one family the
//! exact pipelines cannot certify symbolically; panel-composite
//! Gauss-Legendre over the ordered region (doubled) converges fast because
//! the integrand is smooth there.

use crate::diffop::{EnsembleSpec, Family};
use crate::error::{Error, Result};
use crate::exactq::rational::Rational;

/// Nodes and weights for n-point Gauss-Legendre on [-1, 1], by Newton on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-based initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            // derivative via the standard identity
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0f64, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn panel_integral(
    f: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    panels: usize,
    nodes: &[f64],
    weights: &[f64],
) -> f64 {
    let mut acc = 0.0;
    let h = (hi - lo) / panels as f64;
    for p in 0..panels {
        let a = lo + p as f64 * h;
        let mid = a + 0.5 * h;
        let half = 0.5 * h;
        let mut s = 0.0;
        for (x, w) in nodes.iter().zip(weights) {
            s += w * f(mid + half * x);
        }
        acc += s * half;
    }
    acc
}

/// Floating moments m_0 ... m_{k_max} of the beta = 1, N = 2 ensemble with
/// absolute error target `tol` (default 1e-10 via the public wrapper).
pub fn moments_quadrature(
    spec: &EnsembleSpec<Rational>,
    k_max: u32,
    tol: f64,
) -> Result<Vec<f64>> {
    spec.validate()?;
    if spec.beta != Rational::one() {
        return Err(Error::UnsupportedBeta("quadrature oracle is for beta = 1".into()));
    }
    if spec.n.to_i64() != Some(2) {
        return Err(Error::InvalidParameter("quadrature oracle needs N = 2".into()));
    }
    let a = spec.a.to_f64();
    let b = spec.b.to_f64();
    let (lo, hi) = match spec.family {
        Family::Gaussian => (-8.5f64, 8.5f64),
        Family::Laguerre => (0.0, 90.0),
        Family::Jacobi => (0.0, 1.0),
    };
    let logw = move |x: f64, family: Family| -> f64 {
        match family {
            Family::Gaussian => -x * x,
            Family::Laguerre => {
                if x <= 0.0 {
                    return f64::NEG_INFINITY;
                }
                a * x.ln() - x
            }
            Family::Jacobi => {
                if x <= 0.0 || x >= 1.0 {
                    return f64::NEG_INFINITY;
                }
                a * x.ln() + b * (1.0 - x).ln()
            }
        }
    };
    let family = spec.family;
    // I_k = 2 int_{x<y} (y - x) w(x) w(y) (x^k + y^k): inner integral in x
    // over [lo, y] is smooth for fixed y
    let (nodes, weights) = gauss_legendre(40);
    let integral = |k: u32, panels: usize| -> f64 {
        let outer = |y: f64| {
            let wy = logw(y, family).exp();
            if wy == 0.0 {
                return 0.0;
            }
            let inner = |x: f64| {
                let wx = logw(x, family).exp();
                (y - x) * wx * (x.powi(k as i32) + y.powi(k as i32))
            };
            wy * panel_integral(&inner, lo, y, panels, &nodes, &weights)
        };
        panel_integral(&outer, lo, hi, panels, &nodes, &weights)
    };
    let mut out = Vec::with_capacity(k_max as usize + 2);
    // normalization first
    let mut results: Vec<f64> = Vec::new();
    for k in 0..=k_max {
        let mut panels = 4usize;
        let mut prev = integral(k, panels);
        loop {
            panels *= 2;
            let cur = integral(k, panels);
            if (cur - prev).abs() <= tol.max(1e-14 * cur.abs()) || panels >= 128 {
                if (cur - prev).abs() > (10.0 * tol).max(1e-10 * cur.abs()) {
                    return Err(Error::ToleranceNotMet(format!(
                        "moment {k} quadrature stalled at delta {}",
                        (cur - prev).abs()
                    )));
                }
                results.push(cur);
                break;
            }
            prev = cur;
        }
    }
    let z = results[0] / 2.0; // m_0 = 2
    for r in &results {
        out.push(r / z);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn gauss_legendre_exactness() {
        // 40-point rule integrates x^8 on [-1,1] to machine precision
        let (nodes, weights) = gauss_legendre(40);
        let s: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * x.powi(8))
            .sum();
        assert!((s - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn goe_like_normalization_and_symmetry() {
        let spec = EnsembleSpec::gaussian(ri(1), ri(2));
        let m = moments_quadrature(&spec, 2, 1e-10).unwrap();
        assert!((m[0] - 2.0).abs() < 1e-10);
        assert!(m[1].abs() < 1e-10);
        // m_2 = N/2 + N(N-1)/4 = 1.5
        assert!((m[2] - 1.5).abs() < 1e-8, "m2 = {}", m[2]);
    }

    #[test]
    fn jacobi_reflection_forces_m1() {
        let spec = EnsembleSpec::jacobi(ri(1), ri(2), ri(0), ri(0));
        let m = moments_quadrature(&spec, 1, 1e-10).unwrap();
        assert!((m[1] - 1.0).abs() < 1e-9, "m1 = {}", m[1]);
    }

    #[test]
    fn matches_exact_pipeline_beta1() {
        use crate::moments::moments_exact;
        for spec in [
            EnsembleSpec::gaussian(ri(1), ri(2)),
            EnsembleSpec::laguerre(ri(1), ri(2), ri(2)),
            EnsembleSpec::jacobi(ri(1), ri(2), ri(1), ri(2)),
        ] {
            let q = moments_quadrature(&spec, 6, 1e-10).unwrap();
            let e = moments_exact(&spec, 6).unwrap();
            for k in 0..=6usize {
                let exact = e.get(k as i64).unwrap().to_f64();
                let rel = (q[k] - exact).abs() / exact.abs().max(1e-30);
                assert!(
                    rel < 1e-8,
                    "family {:?} k {k}: quad {} vs exact {exact}",
                    spec.family,
                    q[k]
                );
            }
        }
    }
}

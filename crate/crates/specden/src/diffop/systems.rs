//! First-order matrix ODE systems for the auxiliary-average vectors, and the
//! tridiagonal substitution that eliminates them down to one scalar equation.
//!
//! The Jacobi systems come from the differential-difference equation for the
//! generalized averages J_{n,p}; the Gaussian systems from its simplified
//! Hermite-limit form for the weighted averages G~_{n,p}. Gaussian entries
//! carry sqrt(kappa) in positions that cancel during elimination, so they are
//! stored over Q(sqrt(kappa)).

use super::ensemble::EnsembleSpec;
use super::op::{DiffOp, RatOp};
use crate::error::{Error, Result};
use crate::exactq::poly::Poly;
use crate::exactq::ratfun::RatFun;
use crate::exactq::rational::Rational;
use crate::exactq::scalar::{Quad, Scalar};

/// Square first-order system v' = M(x) v with rational-function entries.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixODE<S: Scalar> {
    entries: Vec<Vec<RatFun<S>>>,
}

impl<S: Scalar> MatrixODE<S> {
    pub fn new(entries: Vec<Vec<RatFun<S>>>) -> Self {
        let dim = entries.len();
        assert!(entries.iter().all(|r| r.len() == dim), "matrix must be square");
        MatrixODE { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &RatFun<S> {
        &self.entries[r][c]
    }
}

/// System for the vector [J_{n,0}, ..., J_{n,n}] of Jacobi-dual averages,
/// with the duality-transformed parameters a', b' substituted. `n` is the
/// power in the average (the even beta value); parameters come from `spec`.
pub fn build_jacobi_system<S: Scalar>(n: usize, spec: &EnsembleSpec<S>) -> Result<MatrixODE<S>> {
    if !matches!(n, 2 | 4 | 6) {
        return Err(Error::UnsupportedN(n));
    }
    let kappa = spec.kappa();
    let ki = S::from_rat(kappa.recip());
    let big_n = &spec.n;
    // a' = (a + b + 2)/kappa + N - 2,  b' = -(b + n)/kappa - N
    let ap = spec
        .a
        .add(&spec.b)
        .add(&S::from_int(2))
        .mul(&ki)
        .add(big_n)
        .sub(&S::from_int(2));
    let bp = spec.b.add(&S::from_int(n as i64)).mul(&ki).add(big_n).neg();
    let apbp = ap.add(&bp);

    let nf = |v: i64| S::from_int(v);
    let a_p = |p: usize| {
        // (n-p)(a' + b' + (2/kappa)(n-p-1) + 2N + 2)
        let np = (n - p) as i64;
        apbp.add(&ki.mul(&nf(2 * (np - 1))))
            .add(&big_n.mul(&nf(2)))
            .add(&nf(2))
            .mul(&nf(np))
    };
    let b_p = |p: usize| {
        // (p-n)(a' + N + 1 + (1/kappa)(n-p-1))
        let np = (n - p) as i64;
        ap.add(big_n)
            .add(&S::one())
            .add(&ki.mul(&nf(np - 1)))
            .mul(&nf(-np))
    };
    let d_p = |p: usize| {
        // p((1/kappa)(n-p) + N + 1)
        let np = (n - p) as i64;
        ki.mul(&nf(np)).add(big_n).add(&S::one()).mul(&nf(p as i64))
    };
    let e_p = |p: usize| {
        // a' + b' + (1/kappa)(2n - p - 2) + N + 2
        apbp.add(&ki.mul(&nf(2 * n as i64 - p as i64 - 2)))
            .add(big_n)
            .add(&nf(2))
    };

    // x(x-1)
    let xxm1 = Poly::from_coeffs(vec![S::zero(), S::from_int(-1), S::one()]);
    let dim = n + 1;
    let mut entries = vec![vec![RatFun::zero(); dim]; dim];
    for p in 0..dim {
        if p > 0 {
            entries[p][p - 1] = RatFun::from_poly(Poly::constant(d_p(p).neg()));
        }
        // (A_p x + B_p) / (x(x-1))
        let num = Poly::from_coeffs(vec![b_p(p), a_p(p)]);
        entries[p][p] = RatFun::new(num, xxm1.clone())?;
        if p < n {
            let num = Poly::constant(e_p(p).mul(&S::from_int((n - p) as i64)));
            entries[p][p + 1] = RatFun::new(num, xxm1.clone())?;
        }
    }
    Ok(MatrixODE::new(entries))
}

/// System for [G~_{n,0}, ..., G~_{n,n}] at ensemble size N (the vector
/// component index N-1 of the source recurrence), over Q(sqrt(kappa)).
pub fn build_gaussian_system(
    n: usize,
    spec: &EnsembleSpec<Rational>,
) -> Result<MatrixODE<Quad>> {
    if !matches!(n, 2 | 4 | 6) {
        return Err(Error::UnsupportedN(n));
    }
    let kappa = spec.kappa();
    let big_n = &spec.n;
    let dim = n + 1;
    let mut entries = vec![vec![RatFun::zero(); dim]; dim];
    for p in 0..dim {
        if p > 0 {
            // (p / sqrt(k)) ((n-p)/k + N) = [p ((n-p)/k + N) / k] sqrt(k)
            let inner = &(&Rational::from_int((n - p) as i64) / &kappa) + big_n;
            let im = &(&Rational::from_int(p as i64) * &inner) / &kappa;
            entries[p][p - 1] =
                RatFun::from_poly(Poly::constant(Quad::from_im(im, kappa.clone())));
        }
        // 2((n-p)/k - 1) x
        let diag = &(&(&Rational::from_int((n - p) as i64) / &kappa) - &Rational::one())
            * &Rational::from_int(2);
        entries[p][p] = RatFun::from_poly(Poly::monomial(Quad::from_re(diag), 1));
        if p < n {
            // -(2/sqrt(k))(n-p) = [-2(n-p)/k] sqrt(k)
            let im = &(&Rational::from_int(-2 * (n - p) as i64) / &kappa) * &Rational::one();
            entries[p][p + 1] =
                RatFun::from_poly(Poly::constant(Quad::from_im(im, kappa.clone())));
        }
    }
    Ok(MatrixODE::new(entries))
}

/// Eliminate a tridiagonal first-order system down to the scalar operator of
/// order dim annihilating component 0 of every solution, with coefficients
/// cleared to polynomials.
///
/// Row p must express component p+1 through component p's derivative and
/// lower components, which is exactly the tridiagonal shape with nonzero
/// superdiagonal; anything else is a `StructureMismatch`.
pub fn eliminate_scalar<S: Scalar>(m: &MatrixODE<S>, target: usize) -> Result<DiffOp<S>> {
    if target != 0 {
        return Err(Error::StructureMismatch(
            "elimination chain only reaches component 0".into(),
        ));
    }
    let dim = m.dim();
    if dim < 2 {
        return Err(Error::StructureMismatch("system dimension < 2".into()));
    }
    for r in 0..dim {
        for c in 0..dim {
            if (c as i64 - r as i64).abs() > 1 && !m.entry(r, c).is_zero() {
                return Err(Error::StructureMismatch(format!(
                    "entry ({r},{c}) outside the tridiagonal band"
                )));
            }
        }
    }

    // L[p] with v_p = L[p] v_0, built by forward substitution
    let mut l_prev = RatOp::<S>::zero();
    let mut l_cur = RatOp::<S>::identity();
    for p in 0..dim - 1 {
        let sup = m.entry(p, p + 1);
        if sup.is_zero() {
            return Err(Error::StructureMismatch(format!(
                "zero superdiagonal at row {p}"
            )));
        }
        // v_{p+1} = (v_p' - M[p][p] v_p - M[p][p-1] v_{p-1}) / M[p][p+1]
        let mut next = l_cur.compose_derivative().sub(&l_cur.scale_ratfun(m.entry(p, p)));
        if p > 0 {
            next = next.sub(&l_prev.scale_ratfun(m.entry(p, p - 1)));
        }
        let next = next.scale_ratfun(&sup.inv());
        l_prev = l_cur;
        l_cur = next;
    }
    // last row: v_{n}' = M[n][n-1] v_{n-1} + M[n][n] v_n
    let residual = l_cur
        .compose_derivative()
        .sub(&l_cur.scale_ratfun(m.entry(dim - 1, dim - 1)))
        .sub(&l_prev.scale_ratfun(m.entry(dim - 1, dim - 2)));
    let (op, _mult) = residual.clear_denominators();
    if op.is_zero() || op.order() != dim {
        return Err(Error::StructureMismatch(format!(
            "eliminated operator has order {:?}, expected {dim}",
            if op.is_zero() { None } else { Some(op.order()) }
        )));
    }
    Ok(op)
}

/// Gaussian elimination wrapper: asserts the scalar operator lands back in Q
/// (after factoring a single overall sqrt(kappa) when present).
pub fn eliminate_scalar_gaussian(m: &MatrixODE<Quad>, target: usize) -> Result<DiffOp<Rational>> {
    let op = eliminate_scalar(m, target)?;
    let all_re = op
        .coeffs()
        .iter()
        .all(|p| p.coeffs().iter().all(|c| c.im.is_zero()));
    let all_im = op
        .coeffs()
        .iter()
        .all(|p| p.coeffs().iter().all(|c| c.re.is_zero()));
    if all_re {
        Ok(op.map_coeffs(|c| c.re.clone()))
    } else if all_im {
        // divide the whole identity by sqrt(kappa)
        Ok(op.map_coeffs(|c| c.im.clone()))
    } else {
        Err(Error::StructureMismatch(
            "residual sqrt(kappa) part survived elimination".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::catalog::catalog_density_op;

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn gaussian_system_matches_printed_entries() {
        // beta = 6 (kappa = 3): entry (0,1) = -4 sqrt(3), i.e. im = -4/sqrt(3)*3
        let spec = EnsembleSpec::gaussian(ri(6), ri(5));
        let m = build_gaussian_system(6, &spec).unwrap();
        // -(2/sqrt(3))*6 = -12/sqrt(3) = -4 sqrt(3)
        let e01 = m.entry(0, 1).num().coeff(0);
        assert_eq!(e01.re, Rational::zero());
        assert_eq!(e01.im, ri(-4));
        // row 1, col 0: (3N+5)/(3 sqrt(3)) = [(3N+5)/9] sqrt(3)
        let e10 = m.entry(1, 0).num().coeff(0);
        assert_eq!(e10.im, Rational::new(3 * 5 + 5, 9));
        // beta = 2: entry (1,0) = N + 1, (2,1) = 2N, diag (2,2) = -2x
        let spec = EnsembleSpec::gaussian(ri(2), ri(7));
        let m = build_gaussian_system(2, &spec).unwrap();
        assert_eq!(m.entry(1, 0).num().coeff(0).re, ri(8));
        assert_eq!(m.entry(2, 1).num().coeff(0).re, ri(14));
        assert_eq!(m.entry(2, 2).num().coeff(1).re, ri(-2));
    }

    #[test]
    fn jacobi_system_d2_formula() {
        // n=2, p=2 row: D_2 = 2((1/kappa)*0 + N + 1)
        let spec = EnsembleSpec::jacobi(ri(2), ri(3), ri(1), ri(2));
        let m = build_jacobi_system(2, &spec).unwrap();
        let d2 = m.entry(2, 1).num().coeff(0);
        assert_eq!(d2, ri(-2 * (3 + 1)));
        // diagonal of the last row is zero: A_2 = B_2 = 0
        assert!(m.entry(2, 2).is_zero());
    }

    #[test]
    fn eliminate_gaussian_beta2_matches_catalog() {
        // Unit-weight catalog operator annihilates the same density as the
        // eliminated scalar equation, so the two must be proportional.
        let spec = EnsembleSpec::gaussian(ri(2), ri(3));
        let m = build_gaussian_system(2, &spec).unwrap();
        let elim = eliminate_scalar_gaussian(&m, 0).unwrap();
        let cat = catalog_density_op(&spec).unwrap();
        assert!(elim.proportional_to(&cat), "elim = {elim}, cat = {cat}");
    }
}

//! The operator catalog: for each supported (family, beta) pair, the linear
//! differential operator annihilating the one-point eigenvalue density, and
//! the polynomial right-hand side of the companion resolvent equation
//! D (1/N) W = R.
//!
//! Supported pairs: Gaussian beta in {2/3, 1, 2, 4, 6}, Laguerre and Jacobi
//! beta in {1, 2, 4}. Orders are 3 (beta = 2), 5 (beta = 1, 4) and
//! 7 (beta = 2/3, 6).
//!
//! For beta in {2/3, 6} the stored operator and right-hand side are both
//! scaled by sqrt(kappa - 1) relative to the source convention; the scaling
//! cancels between the two sides and clears every half-integer power, so all
//! coefficients land in Q.

use super::ensemble::{EnsembleSpec, Family};
use super::op::DiffOp;
use crate::error::{Error, Result};
use crate::exactq::poly::Poly;
use crate::exactq::rational::Rational;
use crate::exactq::scalar::Scalar;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn pc<S: Scalar>(v: &S) -> Poly<S> {
    Poly::constant(v.clone())
}

fn beta_tag(beta: &Rational) -> Option<BetaClass> {
    if *beta == Rational::from_int(2) {
        Some(BetaClass::Two)
    } else if *beta == Rational::from_int(1) || *beta == Rational::from_int(4) {
        Some(BetaClass::OneFour)
    } else if *beta == rat(2, 3) || *beta == Rational::from_int(6) {
        Some(BetaClass::ThirdSix)
    } else {
        None
    }
}

enum BetaClass {
    Two,
    OneFour,
    ThirdSix,
}

fn unsupported<T>(spec_family: Family, beta: &Rational) -> Result<T> {
    Err(Error::UnsupportedBeta(format!(
        "({}, beta = {}) outside the catalog",
        spec_family.as_str(),
        beta
    )))
}

/// Jacobi beta = 1, 4 parameter pack from Theorem-level definitions:
/// a_b = a/(kappa-1), b_b = b/(kappa-1), N_b = (kappa-1) N,
/// at = a_b(a_b - 2), bt = b_b(b_b - 2), ct = a_b + b_b + 4 N_b - 1.
struct TildeParams<S> {
    a_b: S,
    b_b: S,
    n_b: S,
    at: S,
    bt: S,
    ct: S,
}

fn tilde_params<S: Scalar>(spec: &EnsembleSpec<S>) -> TildeParams<S> {
    let kappa = spec.kappa();
    let e = &kappa - &Rational::one();
    assert!(!e.is_zero(), "tilde parameters undefined at kappa = 1");
    let iv = S::from_rat(e.recip());
    let a_b = spec.a.mul(&iv);
    let b_b = spec.b.mul(&iv);
    let n_b = spec.n.mul(&S::from_rat(e));
    let two = S::from_int(2);
    let at = a_b.mul(&a_b.sub(&two));
    let bt = b_b.mul(&b_b.sub(&two));
    let ct = a_b.add(&b_b).add(&n_b.mul(&S::from_int(4))).sub(&S::one());
    TildeParams { a_b, b_b, n_b, at, bt, ct }
}

/// The operator annihilating the density, with parameters substituted.
pub fn catalog_density_op<S: Scalar>(spec: &EnsembleSpec<S>) -> Result<DiffOp<S>> {
    match (spec.family, beta_tag(&spec.beta)) {
        (Family::Gaussian, Some(BetaClass::Two)) => Ok(gaussian_two_op(spec)),
        (Family::Gaussian, Some(BetaClass::OneFour)) => Ok(gaussian_onefour_op(spec)),
        (Family::Gaussian, Some(BetaClass::ThirdSix)) => Ok(gaussian_thirdsix_op(spec)),
        (Family::Laguerre, Some(BetaClass::Two)) => Ok(laguerre_two_op(spec)),
        (Family::Laguerre, Some(BetaClass::OneFour)) => Ok(laguerre_onefour_op(spec)),
        (Family::Jacobi, Some(BetaClass::Two)) => Ok(jacobi_two_op(spec)),
        (Family::Jacobi, Some(BetaClass::OneFour)) => Ok(jacobi_onefour_op(spec)),
        _ => unsupported(spec.family, &spec.beta),
    }
}

/// Polynomial right-hand side R of D (1/N) W = R, same support set.
pub fn catalog_resolvent_rhs<S: Scalar>(spec: &EnsembleSpec<S>) -> Result<Poly<S>> {
    match (spec.family, beta_tag(&spec.beta)) {
        (Family::Gaussian, Some(BetaClass::Two)) => Ok(Poly::constant(S::from_int(2))),
        (Family::Gaussian, Some(BetaClass::OneFour)) => {
            // 2 y^2 - 10 h g/(N sqrt(k)) = 2x^2 - 8g - 10 g(k-1)/(N k)
            let g = spec.g();
            let kappa = spec.kappa();
            let v = g
                .mul(&S::from_rat(&(&kappa - &Rational::one()) / &kappa))
                .div(&spec.n);
            let c0 = g.mul(&S::from_int(-8)).sub(&v.mul(&S::from_int(10)));
            Ok(Poly::from_coeffs(vec![c0, S::zero(), S::from_int(2)]))
        }
        (Family::Gaussian, Some(BetaClass::ThirdSix)) => Ok(gaussian_thirdsix_rhs(spec)),
        (Family::Laguerre, Some(BetaClass::Two)) => {
            // x + a
            Ok(Poly::from_coeffs(vec![spec.a.clone(), S::one()]))
        }
        (Family::Laguerre, Some(BetaClass::OneFour)) => Ok(laguerre_onefour_rhs(spec)),
        (Family::Jacobi, Some(BetaClass::Two)) => {
            // (a + b + N)(a(1-x) + bx)
            let f = spec.a.add(&spec.b).add(&spec.n);
            let lin = Poly::from_coeffs(vec![spec.a.clone(), spec.b.sub(&spec.a)]);
            Ok(lin.scale(&f))
        }
        (Family::Jacobi, Some(BetaClass::OneFour)) => Ok(jacobi_onefour_rhs(spec)),
        _ => unsupported(spec.family, &spec.beta),
    }
}

fn gaussian_two_op<S: Scalar>(spec: &EnsembleSpec<S>) -> DiffOp<S> {
    let g = spec.g();
    let u = g.div(&spec.n); // kappa = 1
    let p3 = pc(&u.mul(&u));
    // -(x^2 - 4g)
    let p1 = Poly::from_coeffs(vec![g.mul(&S::from_int(4)), S::zero(), S::from_int(-1)]);
    let p0 = Poly::var();
    DiffOp::from_coeffs(vec![p0, p1, Poly::zero(), p3])
}

fn gaussian_onefour_op<S: Scalar>(spec: &EnsembleSpec<S>) -> DiffOp<S> {
    let g = spec.g();
    let kappa = spec.kappa();
    let n2 = spec.n.mul(&spec.n);
    // u2 = (g/(N sqrt(k)))^2, v = h g/(N sqrt(k)) = g(k-1)/(N k)
    let u2 = g.mul(&g).div(&n2.mul(&S::from_rat(kappa.clone())));
    let v = g
        .mul(&S::from_rat(&(&kappa - &Rational::one()) / &kappa))
        .div(&spec.n);
    let four_g = g.mul(&S::from_int(4));
    // y^2 = x^2 - 4g as a polynomial
    let y2 = Poly::from_coeffs(vec![four_g.neg(), S::zero(), S::one()]);

    let p5 = pc(&u2.mul(&u2).neg());
    // 5 (y^2/2 - v) u2
    let half = S::from_rat(rat(1, 2));
    let p3 = y2
        .scale(&half)
        .sub(&pc(&v))
        .scale(&u2.mul(&S::from_int(5)));
    let p2 = Poly::var().scale(&u2.mul(&S::from_int(-3)));
    // -(y^4 - 4 v y^2 - u2)
    let p1 = y2
        .mul(&y2)
        .sub(&y2.scale(&v.mul(&S::from_int(4))))
        .sub(&pc(&u2))
        .neg();
    // (y^2 - 2v) x
    let p0 = y2.sub(&pc(&v.mul(&S::from_int(2)))).mul(&Poly::var());
    DiffOp::from_coeffs(vec![p0, p1, p2, p3, Poly::zero(), p5])
}

fn laguerre_two_op<S: Scalar>(spec: &EnsembleSpec<S>) -> DiffOp<S> {
    let a = &spec.a;
    let a_2n = a.add(&spec.n.mul(&S::from_int(2)));
    let a2 = a.mul(a);
    let p3 = Poly::monomial(S::one(), 3);
    let p2 = Poly::monomial(S::from_int(4), 2);
    // -[x^2 - 2(a+2N)x + a^2 - 2] x
    let p1 = Poly::from_coeffs(vec![
        S::zero(),
        a2.sub(&S::from_int(2)).neg(),
        a_2n.mul(&S::from_int(2)),
        S::from_int(-1),
    ]);
    let p0 = Poly::from_coeffs(vec![a2.neg(), a_2n.clone()]);
    DiffOp::from_coeffs(vec![p0, p1, p2, p3])
}

fn laguerre_onefour_op<S: Scalar>(spec: &EnsembleSpec<S>) -> DiffOp<S> {
    let kappa = spec.kappa();
    let iv = S::from_rat((&kappa - &Rational::one()).recip());
    let tp = tilde_params(spec);
    let big_a = tp.a_b.add(&tp.n_b.mul(&S::from_int(4)));
    let at = &tp.at;
    let iv2 = iv.mul(&iv);
    let iv3 = iv2.mul(&iv);
    let iv4 = iv2.mul(&iv2);

    let p5 = Poly::monomial(S::from_int(4), 5);
    let p4 = Poly::monomial(S::from_int(40), 4);
    // -[5 iv^2 x^2 - 10 A iv x + 5 at - 88] x^3
    let p3 = Poly::from_coeffs(vec![
        S::zero(),
        S::zero(),
        S::zero(),
        at.mul(&S::from_int(5)).sub(&S::from_int(88)).neg(),
        big_a.mul(&iv).mul(&S::from_int(10)),
        iv2.mul(&S::from_int(-5)),
    ]);
    // -[16 iv^2 x^2 - 38 A iv x + 22 at - 16] x^2
    let p2 = Poly::from_coeffs(vec![
        S::zero(),
        S::zero(),
        at.mul(&S::from_int(22)).sub(&S::from_int(16)).neg(),
        big_a.mul(&iv).mul(&S::from_int(38)),
        iv2.mul(&S::from_int(-16)),
    ]);
    // iv^4 x^5 - 4 A iv^3 x^4 + 2(2A^2 + at - 2) iv^2 x^3
    //   - 4(at - 3) A iv x^2 + (at^2 - 14 at - 16) x
    let two_a2 = big_a.mul(&big_a).mul(&S::from_int(2));
    let p1 = Poly::from_coeffs(vec![
        S::zero(),
        at.mul(at)
            .sub(&at.mul(&S::from_int(14)))
            .sub(&S::from_int(16)),
        at.sub(&S::from_int(3))
            .mul(&big_a)
            .mul(&iv)
            .mul(&S::from_int(-4)),
        two_a2.add(at).sub(&S::from_int(2)).mul(&iv2).mul(&S::from_int(2)),
        big_a.mul(&iv3).mul(&S::from_int(-4)),
        iv4.clone(),
    ]);
    // -A iv^3 x^3 + (2A^2 + at) iv^2 x^2 - (3 at + 4) A iv x + at^2
    let p0 = Poly::from_coeffs(vec![
        at.mul(at),
        at.mul(&S::from_int(3)).add(&S::from_int(4)).mul(&big_a).mul(&iv).neg(),
        two_a2.add(at).mul(&iv2),
        big_a.mul(&iv3).neg(),
    ]);
    DiffOp::from_coeffs(vec![p0, p1, p2, p3, p4, p5])
}

fn laguerre_onefour_rhs<S: Scalar>(spec: &EnsembleSpec<S>) -> Poly<S> {
    let kappa = spec.kappa();
    let iv = S::from_rat((&kappa - &Rational::one()).recip());
    let tp = tilde_params(spec);
    let a_b = &tp.a_b;
    let iv2 = iv.mul(&iv);
    let iv3 = iv2.mul(&iv);
    let iv4 = iv2.mul(&iv2);
    // 4 iv N_b [2 iv^2 x^2 + (2 a_b - 1) iv x]
    //   - iv [iv^3 x^3 - (a_b + 2) iv^2 x^2]
    //   + iv [(a_b^2 + 4 a_b - 4) iv x - a_b (a_b - 2)^2]
    let a_b2 = a_b.mul(a_b);
    let am2 = a_b.sub(&S::from_int(2));
    Poly::from_coeffs(vec![
        a_b.mul(&am2).mul(&am2).mul(&iv).neg(),
        tp.n_b
            .mul(&a_b.mul(&S::from_int(2)).sub(&S::one()))
            .mul(&iv2)
            .mul(&S::from_int(4))
            .add(&a_b2.add(&a_b.mul(&S::from_int(4))).sub(&S::from_int(4)).mul(&iv2)),
        tp.n_b
            .mul(&iv3)
            .mul(&S::from_int(8))
            .add(&a_b.add(&S::from_int(2)).mul(&iv3)),
        iv4.neg(),
    ])
}

fn jacobi_two_op<S: Scalar>(spec: &EnsembleSpec<S>) -> DiffOp<S> {
    let x = Poly::<S>::var();
    let omx = Poly::from_coeffs(vec![S::one(), S::from_int(-1)]);
    let xomx = x.mul(&omx);
    let one_m_2x = Poly::from_coeffs(vec![S::one(), S::from_int(-2)]);
    let a2 = spec.a.mul(&spec.a);
    let b2 = spec.b.mul(&spec.b);
    // sigma = (a + b + 2N)^2
    let s = spec.a.add(&spec.b).add(&spec.n.mul(&S::from_int(2)));
    let sigma = s.mul(&s);

    let p3 = xomx.pow(3);
    let p2 = xomx.pow(2).mul(&one_m_2x).scale(&S::from_int(4));
    // [sigma - 14] x^2(1-x)^2 - [a^2(1-x) + b^2 x - 2] x(1-x)
    let bracket = Poly::from_coeffs(vec![a2.sub(&S::from_int(2)), b2.sub(&a2)]);
    let p1 = xomx
        .pow(2)
        .scale(&sigma.sub(&S::from_int(14)))
        .sub(&bracket.mul(&xomx));
    // (1/2)[sigma - 4](1-2x) x(1-x) + (3/2)(a^2-b^2) x(1-x) - a^2(1-x) + b^2 x
    let p0 = one_m_2x
        .mul(&xomx)
        .scale(&sigma.sub(&S::from_int(4)).mul(&S::from_rat(rat(1, 2))))
        .add(&xomx.scale(&a2.sub(&b2).mul(&S::from_rat(rat(3, 2)))))
        .sub(&omx.scale(&a2))
        .add(&x.scale(&b2));
    DiffOp::from_coeffs(vec![p0, p1, p2, p3])
}

fn jacobi_onefour_op<S: Scalar>(spec: &EnsembleSpec<S>) -> DiffOp<S> {
    let tp = tilde_params(spec);
    let (at, bt, ct) = (&tp.at, &tp.bt, &tp.ct);
    let c2 = ct.mul(ct);
    let x = Poly::<S>::var();
    let omx = Poly::from_coeffs(vec![S::one(), S::from_int(-1)]);
    let xomx = x.mul(&omx);
    let one_m_2x = Poly::from_coeffs(vec![S::one(), S::from_int(-2)]);
    // f_pm(A, B) = A(1-x) +- B x
    let f_plus = |a: &S, b: &S| Poly::from_coeffs(vec![a.clone(), b.sub(a)]);
    let f_minus = |a: &S, b: &S| Poly::from_coeffs(vec![a.clone(), b.add(a).neg()]);
    let at2 = at.mul(at);
    let bt2 = bt.mul(bt);
    let amb = at.sub(bt);

    let p5 = xomx.pow(5).scale(&S::from_int(4));
    let p4 = one_m_2x.mul(&xomx.pow(4)).scale(&S::from_int(40));
    // [5 c2 - 493] x^4(1-x)^4 - [5 f_+(at,bt) - 88] x^3(1-x)^3
    let p3 = xomx
        .pow(4)
        .scale(&c2.mul(&S::from_int(5)).sub(&S::from_int(493)))
        .sub(
            &f_plus(at, bt)
                .scale(&S::from_int(5))
                .sub(&Poly::constant(S::from_int(88)))
                .mul(&xomx.pow(3)),
        );
    // 41(at-bt) x^3(1-x)^3 + [19 c2 - 539](1-2x) x^3(1-x)^3
    //   - 22 f_-(at,bt) x^2(1-x)^2 + 16(1-2x) x^2(1-x)^2
    let p2 = xomx
        .pow(3)
        .scale(&amb.mul(&S::from_int(41)))
        .add(&one_m_2x.mul(&xomx.pow(3)).scale(&c2.mul(&S::from_int(19)).sub(&S::from_int(539))))
        .sub(&f_minus(at, bt).mul(&xomx.pow(2)).scale(&S::from_int(22)))
        .add(&one_m_2x.mul(&xomx.pow(2)).scale(&S::from_int(16)));
    // [c2^2 - 64 c2 + 719] x^3(1-x)^3
    //   - [(c2-45)(at+bt-6) + (at-bt)^2 - 248] x^2(1-x)^2
    //   - (c2-37)(at-bt) (1-2x) x^2(1-x)^2
    //   + [f_+(at^2,bt^2) - 14 f_+(at,bt) - 16] x(1-x)
    let p1 = xomx
        .pow(3)
        .scale(
            &c2.mul(&c2)
                .sub(&c2.mul(&S::from_int(64)))
                .add(&S::from_int(719)),
        )
        .sub(&xomx.pow(2).scale(
            &c2.sub(&S::from_int(45))
                .mul(&at.add(bt).sub(&S::from_int(6)))
                .add(&amb.mul(&amb))
                .sub(&S::from_int(248)),
        ))
        .sub(
            &one_m_2x
                .mul(&xomx.pow(2))
                .scale(&c2.sub(&S::from_int(37)).mul(&amb)),
        )
        .add(
            &f_plus(&at2, &bt2)
                .sub(&f_plus(at, bt).scale(&S::from_int(14)))
                .sub(&Poly::constant(S::from_int(16)))
                .mul(&xomx),
        );
    // (5/2)(c2-9)(at-bt) x^2(1-x)^2 + (1/2)(c2-9)^2 (1-2x) x^2(1-x)^2
    //   - (1/2)[(3c2-35) f_-(at,bt) + (7/2)(at^2-bt^2) + 4(at-bt)] x(1-x)
    //   - (1/2)[4 c2 - 36 + (3/2)(at-bt)^2] (1-2x) x(1-x) + f_-(at^2,bt^2)
    let c2m9 = c2.sub(&S::from_int(9));
    let p0 = xomx
        .pow(2)
        .scale(&c2m9.mul(&amb).mul(&S::from_rat(rat(5, 2))))
        .add(
            &one_m_2x
                .mul(&xomx.pow(2))
                .scale(&c2m9.mul(&c2m9).mul(&S::from_rat(rat(1, 2)))),
        )
        .sub(
            &f_minus(at, bt)
                .scale(&c2.mul(&S::from_int(3)).sub(&S::from_int(35)))
                .add(&Poly::constant(
                    at2.sub(&bt2)
                        .mul(&S::from_rat(rat(7, 2)))
                        .add(&amb.mul(&S::from_int(4))),
                ))
                .mul(&xomx)
                .scale(&S::from_rat(rat(1, 2))),
        )
        .sub(&one_m_2x.mul(&xomx).scale(
            &c2.mul(&S::from_int(4))
                .sub(&S::from_int(36))
                .add(&amb.mul(&amb).mul(&S::from_rat(rat(3, 2))))
                .mul(&S::from_rat(rat(1, 2))),
        ))
        .add(&f_minus(&at2, &bt2));
    DiffOp::from_coeffs(vec![p0, p1, p2, p3, p4, p5])
}

fn jacobi_onefour_rhs<S: Scalar>(spec: &EnsembleSpec<S>) -> Poly<S> {
    let tp = tilde_params(spec);
    let (a_b, b_b, n_b, ct) = (&tp.a_b, &tp.b_b, &tp.n_b, &tp.ct);
    let x = Poly::<S>::var();
    let omx = Poly::from_coeffs(vec![S::one(), S::from_int(-1)]);
    let xomx = x.mul(&omx);
    let ct2n = ct.sub(&n_b.mul(&S::from_int(2)));
    let apb = a_b.add(b_b);
    // (a_b+b_b)(a_b+b_b-2)(a_b(1-x)+b_b x)
    let lin = Poly::from_coeffs(vec![a_b.clone(), b_b.sub(a_b)]);
    let term1 = lin.scale(&apb.mul(&apb.sub(&S::from_int(2))));
    // 4 N_b (ct - 2N_b)(2 a_b (1-x) + 2 b_b x - 1)
    let lin2 = Poly::from_coeffs(vec![
        a_b.mul(&S::from_int(2)).sub(&S::one()),
        b_b.sub(a_b).mul(&S::from_int(2)),
    ]);
    let term2 = lin2.scale(&n_b.mul(&ct2n).mul(&S::from_int(4)));
    // - a_b b_b (a_b + b_b - 6) - 4(a_b + b_b - 1)
    let c = a_b
        .mul(b_b)
        .mul(&apb.sub(&S::from_int(6)))
        .add(&apb.sub(&S::one()).mul(&S::from_int(4)))
        .neg();
    let bracket = term1.add(&term2).add(&Poly::constant(c));
    // - (ct - 2N_b)[a_b(a_b-2)^2 (1-x)^2 + b_b(b_b-2)^2 x^2]
    let am2 = a_b.sub(&S::from_int(2));
    let bm2 = b_b.sub(&S::from_int(2));
    let tail = omx
        .pow(2)
        .scale(&a_b.mul(&am2).mul(&am2))
        .add(&x.pow(2).scale(&b_b.mul(&bm2).mul(&bm2)));
    xomx.mul(&bracket).scale(&ct2n).sub(&tail.scale(&ct2n))
}

fn gaussian_thirdsix_op<S: Scalar>(spec: &EnsembleSpec<S>) -> DiffOp<S> {
    let kappa = spec.kappa();
    let e = &kappa - &Rational::one();
    let ei = S::from_rat(e.recip());
    let ei2 = ei.mul(&ei);
    let es = |k: i32| S::from_rat(e.pow(k));
    let nb = spec.n.mul(&S::from_rat(e.clone()));
    let nb2 = nb.mul(&nb);
    let three_nb_2 = nb.mul(&S::from_int(3)).add(&S::from_int(2));

    let p7 = pc(&es(4).mul(&S::from_int(81)));
    // 1008 e^3 (3Nb + 2) - 2016 e^2 x^2
    let p5 = Poly::from_coeffs(vec![
        three_nb_2.mul(&es(3)).mul(&S::from_int(1008)),
        S::zero(),
        es(2).mul(&S::from_int(-2016)),
    ]);
    let p4 = Poly::monomial(es(2).mul(&S::from_int(2016)), 1);
    // 64 e^2 (21Nb+5)(21Nb+23) - 896 e (42Nb+28) x^2 + 12544 x^4
    let q1 = nb.mul(&S::from_int(21)).add(&S::from_int(5));
    let q2 = nb.mul(&S::from_int(21)).add(&S::from_int(23));
    let p3 = Poly::from_coeffs(vec![
        q1.mul(&q2).mul(&es(2)).mul(&S::from_int(64)),
        S::zero(),
        nb.mul(&S::from_int(42))
            .add(&S::from_int(28))
            .mul(&es(1))
            .mul(&S::from_int(-896)),
        S::zero(),
        S::from_int(12544),
    ]);
    // 9984 e (3Nb+2) x - 19968 x^3
    let p2 = Poly::from_coeffs(vec![
        S::zero(),
        three_nb_2.mul(&es(1)).mul(&S::from_int(9984)),
        S::zero(),
        S::from_int(-19968),
    ]);
    // 256 e [54 Nb (4Nb^2 + 8Nb + 3) - 20] - 256(432 Nb^2 + 576 Nb + 57) x^2
    //   + (24576/e)(3Nb+2) x^4 - (16384/e^2) x^6
    let cubic = nb
        .mul(
            &nb2.mul(&S::from_int(4))
                .add(&nb.mul(&S::from_int(8)))
                .add(&S::from_int(3)),
        )
        .mul(&S::from_int(54))
        .sub(&S::from_int(20));
    let p1 = Poly::from_coeffs(vec![
        cubic.mul(&es(1)).mul(&S::from_int(256)),
        S::zero(),
        nb2.mul(&S::from_int(432))
            .add(&nb.mul(&S::from_int(576)))
            .add(&S::from_int(57))
            .mul(&S::from_int(-256)),
        S::zero(),
        three_nb_2.mul(&ei).mul(&S::from_int(24576)),
        S::zero(),
        ei2.mul(&S::from_int(-16384)),
    ]);
    // 256(144 Nb^2 + 192 Nb + 25) x - (16384/e)(3Nb+2) x^3 + (16384/e^2) x^5
    let p0 = Poly::from_coeffs(vec![
        S::zero(),
        nb2.mul(&S::from_int(144))
            .add(&nb.mul(&S::from_int(192)))
            .add(&S::from_int(25))
            .mul(&S::from_int(256)),
        S::zero(),
        three_nb_2.mul(&ei).mul(&S::from_int(-16384)),
        S::zero(),
        ei2.mul(&S::from_int(16384)),
    ]);
    DiffOp::from_coeffs(vec![p0, p1, p2, p3, p4, p5, Poly::zero(), p7])
}

fn gaussian_thirdsix_rhs<S: Scalar>(spec: &EnsembleSpec<S>) -> Poly<S> {
    let kappa = spec.kappa();
    let e = &kappa - &Rational::one();
    let ei = S::from_rat(e.recip());
    let ei2 = ei.mul(&ei);
    let nb = spec.n.mul(&S::from_rat(e));
    // 2048 [16 x^4/e^2 - 8(6Nb+7) x^2/e + (6Nb+7)^2 - 6]
    let w = nb.mul(&S::from_int(6)).add(&S::from_int(7));
    Poly::from_coeffs(vec![
        w.mul(&w).sub(&S::from_int(6)).mul(&S::from_int(2048)),
        S::zero(),
        w.mul(&ei).mul(&S::from_int(-16384)),
        S::zero(),
        ei2.mul(&S::from_int(32768)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::ensemble::GaussianCoupling;

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn jacobi_two_leading_coefficient() {
        // order-3 operator with leading coefficient x^3 (1-x)^3
        let spec = EnsembleSpec::jacobi(ri(2), ri(3), ri(1), ri(2));
        let op = catalog_density_op(&spec).unwrap();
        assert_eq!(op.order(), 3);
        let expect = Poly::var().mul(&Poly::from_ints(&[1, -1])).pow(3);
        assert_eq!(op.coeff(3), expect);
    }

    #[test]
    fn gaussian_two_instantiated() {
        // g = 1/2, N = 1: coefficients ((1/2)^2, -(x^2-2), x)
        let spec = EnsembleSpec::gaussian_with_g(ri(2), ri(1), Rational::new(1, 2));
        let op = catalog_density_op(&spec).unwrap();
        assert_eq!(op.order(), 3);
        assert_eq!(op.coeff(3), Poly::constant(Rational::new(1, 4)));
        assert_eq!(op.coeff(1), Poly::from_ints(&[2, 0, -1]));
        assert_eq!(op.coeff(0), Poly::var());
    }

    #[test]
    fn unsupported_combinations() {
        let spec = EnsembleSpec::jacobi(ri(6), ri(2), ri(0), ri(0));
        assert!(matches!(
            catalog_density_op(&spec),
            Err(Error::UnsupportedBeta(_))
        ));
        let spec = EnsembleSpec::gaussian(Rational::new(3, 1), ri(2));
        assert!(matches!(
            catalog_resolvent_rhs(&spec),
            Err(Error::UnsupportedBeta(_))
        ));
    }

    #[test]
    fn rhs_examples() {
        // Gaussian beta=2 -> constant 2
        let spec = EnsembleSpec::gaussian(ri(2), ri(5));
        assert_eq!(
            catalog_resolvent_rhs(&spec).unwrap(),
            Poly::constant(ri(2))
        );
        // Jacobi beta=2, a=1, b=2, N=3 -> 6 + 6x
        let spec = EnsembleSpec::jacobi(ri(2), ri(3), ri(1), ri(2));
        assert_eq!(
            catalog_resolvent_rhs(&spec).unwrap(),
            Poly::from_ints(&[6, 6])
        );
        // Laguerre beta=2, a=0 -> x
        let spec = EnsembleSpec::laguerre(ri(2), ri(4), ri(0));
        assert_eq!(catalog_resolvent_rhs(&spec).unwrap(), Poly::from_ints(&[0, 1]));
    }

    #[test]
    fn orders_match_class() {
        for (fam, beta, order) in [
            (Family::Gaussian, rat(2, 3), 7usize),
            (Family::Gaussian, ri(1), 5),
            (Family::Gaussian, ri(2), 3),
            (Family::Gaussian, ri(4), 5),
            (Family::Gaussian, ri(6), 7),
            (Family::Laguerre, ri(1), 5),
            (Family::Laguerre, ri(2), 3),
            (Family::Laguerre, ri(4), 5),
            (Family::Jacobi, ri(1), 5),
            (Family::Jacobi, ri(2), 3),
            (Family::Jacobi, ri(4), 5),
        ] {
            let spec = EnsembleSpec {
                family: fam,
                beta,
                n: ri(3),
                a: Rational::new(1, 2),
                b: Rational::new(3, 2),
                coupling: GaussianCoupling::UnitWeight,
            };
            let op = catalog_density_op(&spec).unwrap();
            assert_eq!(op.order(), order, "family {fam:?}");
        }
    }
}

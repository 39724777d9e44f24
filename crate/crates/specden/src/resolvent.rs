//! Resolvent series and the topological-expansion coefficients of the scaled
//! resolvents, computed level by level from first-order ODEs.
//!
//! The engine does not transcribe the per-level equations: it grades the
//! finite-N catalog identity D W = N R by powers of N after the global
//! rescaling of the spectral variable, and reads the level equations off the
//! grading. Levels are stored in the kappa-normalized form u_l defined by
//!
//!   scaled resolvent = sum_l u_l N^(1-l),
//!
//! which keeps every coefficient rational. The source normalizations are
//! recovered as W^(G),l = 2^(l-1) kappa^(l/2) u_l, W^(L),l = kappa^(l/2) u_l,
//! W^(J),l = kappa^l u_l. In this normalization
//! u_l = sum_k M_{k,l} kappa^(-k) x^(-sk-1) (s = 2 Gaussian, 1 otherwise;
//! the kappa power is absent for Jacobi), which is what the dual-pipeline
//! check exercises.

use crate::diffop::{catalog_density_op, catalog_resolvent_rhs, DiffOp, EnsembleSpec, Family};
use crate::error::{Error, Result};
use crate::exactq::poly::{Poly, PolyQ};
use crate::exactq::rational::Rational;
use crate::exactq::scalar::{RatN, Scalar};
use crate::exactq::series::{series_apply_diffop, series_from_moments, InvXSeries};
use crate::moments::{coeff_table, moments_exact, CoeffTable};
use std::collections::BTreeMap;

/// Truncated 1/x resolvent series W = sum m_k x^(-k-1) of a numeric ensemble.
pub fn resolvent_series(spec: &EnsembleSpec<Rational>, big_j: u32) -> Result<InvXSeries> {
    if big_j == 0 {
        return Ok(InvXSeries::zero(0));
    }
    let table = moments_exact(spec, big_j - 1)?;
    Ok(series_from_moments(&table.prefix(big_j - 1), big_j))
}

/// Outcome of substituting the resolvent series into its catalog ODE.
#[derive(Clone, Debug)]
pub struct ResidualReport {
    /// computed polynomial part of D (1/N) W
    pub polynomial_part: PolyQ,
    /// catalog right-hand side
    pub expected: PolyQ,
    /// number of negative powers that were checkable at this truncation
    pub checked_negative: u32,
    /// any nonzero checked negative-power coefficients (expected none)
    pub nonzero_negative: Vec<(u32, Rational)>,
}

impl ResidualReport {
    pub fn ok(&self) -> bool {
        self.polynomial_part == self.expected && self.nonzero_negative.is_empty()
    }
}

/// Substitute the truncated resolvent into D (1/N) W and compare against the
/// catalog right-hand side: the polynomial part must match exactly and every
/// checkable negative power must vanish.
pub fn check_resolvent_ode(spec: &EnsembleSpec<Rational>, big_j: u32) -> Result<ResidualReport> {
    let op = catalog_density_op(spec)?;
    let rhs = catalog_resolvent_rhs(spec)?;
    let w = resolvent_series(spec, big_j)?;
    let applied = series_apply_diffop(&op, &w)?.scale(&spec.n.recip());
    let mut nonzero = Vec::new();
    for j in 1..=applied.order() {
        let c = applied.coeff(j).unwrap();
        if !c.is_zero() {
            nonzero.push((j, c));
        }
    }
    let head = applied.head().add(&PolyQ::constant(applied.coeff(0).unwrap()));
    Ok(ResidualReport {
        polynomial_part: head,
        expected: rhs,
        checked_negative: applied.order(),
        nonzero_negative: nonzero,
    })
}

/// Stack of expansion levels for one (family, beta, scaling) choice.
#[derive(Clone, Debug)]
pub struct ExpansionStack {
    pub family: Family,
    pub beta: Rational,
    pub alpha1: Rational,
    pub alpha2: Rational,
    /// u_l levels; see the module docs for the normalization
    pub levels: Vec<InvXSeries>,
    pub trunc: u32,
}

impl ExpansionStack {
    pub fn kappa(&self) -> Rational {
        &self.beta * &Rational::new(1, 2)
    }

    /// Moment stride: Gaussian levels hold x^(-2k-1) terms only.
    pub fn stride(&self) -> u32 {
        if self.family == Family::Gaussian {
            2
        } else {
            1
        }
    }

    pub fn level(&self, l: usize) -> Option<&InvXSeries> {
        self.levels.get(l)
    }
}

/// N-graded form of the scaled catalog identity: operators and right-hand
/// sides indexed by the power of N they multiply.
struct GradedSystem {
    ops: BTreeMap<i64, DiffOp<Rational>>,
    rhs: BTreeMap<i64, PolyQ>,
    top: i64,
}

fn symbolic_spec(
    family: Family,
    beta: &Rational,
    alpha1: &Rational,
    alpha2: &Rational,
) -> EnsembleSpec<RatN> {
    let n = RatN::var();
    let a = RatN::from_poly(Poly::from_rationals(&[Rational::zero(), alpha1.clone()]));
    let b = RatN::from_poly(Poly::from_rationals(&[Rational::zero(), alpha2.clone()]));
    match family {
        Family::Gaussian => EnsembleSpec::gaussian(beta.clone(), n),
        Family::Laguerre => EnsembleSpec::laguerre(beta.clone(), n, a),
        Family::Jacobi => EnsembleSpec::jacobi(beta.clone(), n, a, b),
    }
}

/// Build the graded system for the scaled variable. The scaling maps are
/// x_raw = sqrt(N kappa) x (Gaussian), x_raw = N kappa x (Laguerre), identity
/// (Jacobi), with the scaled resolvent expanded as sum_l u_l N^(1-l).
fn graded_system(
    family: Family,
    beta: &Rational,
    alpha1: &Rational,
    alpha2: &Rational,
) -> Result<GradedSystem> {
    let spec = symbolic_spec(family, beta, alpha1, alpha2);
    let op = catalog_density_op(&spec)?;
    let rhs = catalog_resolvent_rhs(&spec)?;
    let kappa = spec.kappa();

    let mut ops: BTreeMap<i64, Vec<(usize, usize, Rational)>> = BTreeMap::new();
    let mut rhs_map: BTreeMap<i64, Vec<(usize, Rational)>> = BTreeMap::new();

    // exponent bookkeeping for one term x^m d^i acting on the unknown:
    // Gaussian (N kappa)^((m-i-1)/2), Laguerre (N kappa)^(m-i-1), Jacobi 1
    for (i, p) in op.coeffs().iter().enumerate() {
        for (m, c) in p.coeffs().iter().enumerate() {
            if Scalar::is_zero(c) {
                continue;
            }
            let cpoly = c.as_poly().ok_or_else(|| {
                Error::StructureMismatch("catalog coefficient not polynomial in N".into())
            })?;
            let shift = m as i64 - i as i64 - 1;
            let npow = match family {
                Family::Gaussian => {
                    if shift.rem_euclid(2) != 0 {
                        return Err(Error::StructureMismatch(
                            "Gaussian term with odd scaled shift".into(),
                        ));
                    }
                    shift / 2
                }
                Family::Laguerre => shift,
                Family::Jacobi => 0,
            };
            let kfac = kappa.pow(npow as i32);
            for (d, cd) in cpoly.coeffs().iter().enumerate() {
                if cd.is_zero() {
                    continue;
                }
                ops.entry(npow + d as i64).or_default().push((i, m, cd * &kfac));
            }
        }
    }
    // N R(x_raw): each monomial R_m x_raw^m picks up the map factor
    for (m, c) in rhs.coeffs().iter().enumerate() {
        if Scalar::is_zero(c) {
            continue;
        }
        let cpoly = c.as_poly().ok_or_else(|| {
            Error::StructureMismatch("catalog RHS not polynomial in N".into())
        })?;
        let npow = match family {
            Family::Gaussian => {
                if m % 2 != 0 {
                    return Err(Error::StructureMismatch(
                        "Gaussian RHS with odd monomial".into(),
                    ));
                }
                (m / 2) as i64
            }
            Family::Laguerre => m as i64,
            Family::Jacobi => 0,
        };
        let kfac = kappa.pow(npow as i32);
        for (d, cd) in cpoly.coeffs().iter().enumerate() {
            if cd.is_zero() {
                continue;
            }
            // the extra factor N from D W = N R
            rhs_map
                .entry(npow + d as i64 + 1)
                .or_default()
                .push((m, cd * &kfac));
        }
    }

    let ops: BTreeMap<i64, DiffOp<Rational>> = ops
        .into_iter()
        .map(|(p, terms)| {
            let order = terms.iter().map(|(i, _, _)| *i).max().unwrap();
            let mut coeffs = vec![PolyQ::zero(); order + 1];
            for (i, m, c) in terms {
                coeffs[i] = coeffs[i].add(&PolyQ::monomial(c, m));
            }
            (p, DiffOp::from_coeffs(coeffs))
        })
        .filter(|(_, op)| !op.is_zero())
        .collect();
    let rhs: BTreeMap<i64, PolyQ> = rhs_map
        .into_iter()
        .map(|(p, terms)| {
            let mut poly = PolyQ::zero();
            for (m, c) in terms {
                poly = poly.add(&PolyQ::monomial(c, m));
            }
            (p, poly)
        })
        .filter(|(_, p)| !p.is_zero())
        .collect();

    let top = *ops
        .keys()
        .next_back()
        .ok_or_else(|| Error::StructureMismatch("empty graded operator".into()))?;
    if let Some((&p, _)) = rhs.iter().next_back() {
        if p > top + 1 {
            return Err(Error::StructureMismatch(format!(
                "RHS power {p} exceeds the grading top {top}+1"
            )));
        }
    }
    Ok(GradedSystem { ops, rhs, top })
}

/// Solve A u' + B u = rhs coefficientwise in 1/x for a pure inverse-power
/// series of order J. Every target coefficient needs a nonzero multiplier,
/// with one exception: the leading coefficient's multiplier vanishes
/// structurally for the Jacobi level operators (their homogeneous solution
/// decays like 1/x), in which case the caller supplies the m_0-normalization
/// anchor c_1 and the degenerate row is kept as a consistency check.
fn solve_first_order(
    a: &PolyQ,
    b: &PolyQ,
    rhs: &InvXSeries,
    big_j: u32,
    anchor_c1: Option<&Rational>,
) -> Result<InvXSeries> {
    let da = a.deg_i64();
    let db = b.deg_i64();
    let d = (da - 1).max(db);
    // consistency: no RHS content above the operator's reach
    let head = rhs.head();
    for e in 1..=head.deg_i64().max(0) {
        if e > d && !head.coeff(e as usize).is_zero() {
            return Err(Error::StructureMismatch(format!(
                "level RHS carries x^{e} beyond the operator reach {d}"
            )));
        }
    }
    let mut c: Vec<Rational> = vec![Rational::zero()]; // c[0] unused
    for e in (d - big_j as i64..=d - 1).rev() {
        let j = (d - e) as usize;
        // multiplier of the new unknown c_j
        let mut mu = Rational::zero();
        if da - 1 == d {
            mu += &a.coeff(da as usize) * &Rational::from_int(-(j as i64));
        }
        if db == d {
            mu += b.coeff(db as usize);
        }
        let mut acc = match rhs.coeff_at(e) {
            Some(v) => v,
            None => {
                return Err(Error::TruncationTooShort(format!(
                    "level RHS not valid at x^{e}"
                )))
            }
        };
        for (jp, cjp) in c.iter().enumerate().skip(1) {
            if cjp.is_zero() {
                continue;
            }
            // A contributes at exponent e via p = e + jp + 1; B via p = e + jp
            let pa = e + jp as i64 + 1;
            if pa >= 0 && pa <= da {
                acc -= &(&a.coeff(pa as usize) * cjp) * &Rational::from_int(-(jp as i64));
            }
            let pb = e + jp as i64;
            if pb >= 0 && pb <= db {
                acc -= &b.coeff(pb as usize) * cjp;
            }
        }
        if mu.is_zero() {
            match (j, anchor_c1) {
                (1, Some(v)) => {
                    if !acc.is_zero() {
                        return Err(Error::StructureMismatch(format!(
                            "degenerate leading row inconsistent: residual {acc}"
                        )));
                    }
                    c.push(v.clone());
                }
                _ => {
                    return Err(Error::SingularSystem(format!(
                        "level solve: zero multiplier for coefficient {j}"
                    )))
                }
            }
            continue;
        }
        c.push(&acc / &mu);
    }
    let coeffs: BTreeMap<u32, Rational> = c
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (j as u32, v.clone()))
        .collect();
    Ok(InvXSeries::new(coeffs, PolyQ::zero(), big_j))
}

/// Compute the expansion levels u_0 ... u_{l_max} to truncation order J by
/// the graded first-order recursion. The homogeneous solution carries a
/// polynomial head; the inverse-power form excludes it, so every level is
/// uniquely determined.
pub fn expansion_coefficients(
    family: Family,
    beta: &Rational,
    alpha1: &Rational,
    alpha2: &Rational,
    l_max: u32,
    big_j: u32,
) -> Result<ExpansionStack> {
    let gs = graded_system(family, beta, alpha1, alpha2)?;
    let top_op = &gs.ops[&gs.top];
    if top_op.order() != 1 {
        return Err(Error::StructureMismatch(format!(
            "leading graded operator has order {}, expected 1",
            top_op.order()
        )));
    }
    let a = top_op.coeff(1);
    let b = top_op.coeff(0);
    // truncation margin: lower levels feed higher ones through shifted ops
    let max_shift: i64 = gs
        .ops
        .values()
        .flat_map(|op| {
            op.coeffs().iter().enumerate().flat_map(|(i, p)| {
                p.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(m, _)| m as i64 - i as i64)
            })
        })
        .max()
        .unwrap_or(0)
        .max(1);
    let mut levels: Vec<InvXSeries> = Vec::new();
    for l in 0..=l_max {
        let j_l = big_j + (l_max - l) * max_shift as u32;
        let power = gs.top + 1 - l as i64;
        let mut rhs = match gs.rhs.get(&power) {
            Some(p) => InvXSeries::new(BTreeMap::new(), p.clone(), j_l),
            None => InvXSeries::zero(j_l),
        };
        for (&j, opj) in gs.ops.iter() {
            if j == gs.top {
                continue;
            }
            let d = (gs.top - j) as usize;
            if d > l as usize {
                continue;
            }
            let lower = &levels[l as usize - d];
            let applied = series_apply_diffop(opj, lower)?;
            rhs = rhs.sub(&applied);
        }
        if rhs.order() < j_l {
            return Err(Error::TruncationTooShort(format!(
                "level {l}: RHS valid to {} but {j_l} needed",
                rhs.order()
            )));
        }
        let anchor = if family == Family::Jacobi {
            Some(if l == 0 { Rational::one() } else { Rational::zero() })
        } else {
            None
        };
        let u = solve_first_order(&a, &b, &rhs.truncate(j_l), j_l, anchor.as_ref())?;
        levels.push(u);
    }
    let levels = levels.into_iter().map(|u| u.truncate(big_j)).collect();
    Ok(ExpansionStack {
        family,
        beta: beta.clone(),
        alpha1: alpha1.clone(),
        alpha2: alpha2.clone(),
        levels,
        trunc: big_j,
    })
}

/// Report for the series-identity checks below.
#[derive(Clone, Debug)]
pub struct SeriesCheckReport {
    pub id: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl SeriesCheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn new(id: impl Into<String>) -> Self {
        SeriesCheckReport { id: id.into(), checked: 0, violations: Vec::new() }
    }
}

/// Level-0 universality: after rescaling the alpha parameters by 1/kappa the
/// level-0 series coincide coefficientwise across beta within a family.
pub fn w0_universality_check(
    family: Family,
    betas: &[Rational],
    alpha1: &Rational,
    alpha2: &Rational,
    big_j: u32,
) -> Result<SeriesCheckReport> {
    let mut report = SeriesCheckReport::new("w0-universality");
    let mut reference: Option<InvXSeries> = None;
    for beta in betas {
        let kappa = beta * &Rational::new(1, 2);
        let a1 = &(alpha1 / &kappa);
        let a2 = &(alpha2 / &kappa);
        let stack = expansion_coefficients(family, beta, a1, a2, 0, big_j)?;
        let u0 = stack.levels[0].clone();
        match &reference {
            None => reference = Some(u0),
            Some(r) => {
                report.checked += 1;
                if !r.eq_to_common_order(&u0) {
                    let idx = (0..=r.order().min(u0.order()))
                        .find(|&j| r.coeff(j) != u0.coeff(j));
                    report.violations.push(format!(
                        "beta = {beta}: level-0 series differs first at x^-{}",
                        idx.unwrap_or(0)
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Dual-pipeline agreement: reassemble the levels from the coefficient table
/// via u_l = sum_k M_{k,l} kappa^(-k) x^(-sk-1) and compare exactly.
pub fn dual_pipeline_check(
    stack: &ExpansionStack,
    table: &CoeffTable,
    k_max: u32,
    l_max: u32,
) -> Result<SeriesCheckReport> {
    let mut report = SeriesCheckReport::new("dual-pipeline");
    let stride = stack.stride();
    let kappa = stack.kappa();
    if stack.trunc < stride * k_max + 1 {
        return Err(Error::RangeTooSmall(format!(
            "stack truncation {} cannot reach k = {k_max}",
            stack.trunc
        )));
    }
    for l in 0..=l_max {
        let level = stack
            .level(l as usize)
            .ok_or_else(|| Error::RangeTooSmall(format!("stack lacks level {l}")))?;
        for k in 0..=k_max {
            report.checked += 1;
            let m = table
                .get(k as i64, l as i64)
                .ok_or_else(|| Error::RangeTooSmall(format!("table lacks M({k},{l})")))?;
            let expect = if stack.family == Family::Jacobi {
                m
            } else {
                &m * &kappa.pow(-(k as i32))
            };
            let got = level.coeff(stride * k + 1).unwrap();
            if got != expect {
                report
                    .violations
                    .push(format!("l = {l}, k = {k}: series {got} != table {expect}"));
            }
        }
        // the off-stride coefficients must vanish
        for j in 0..=level.order() {
            if (j as i64 - 1).rem_euclid(stride as i64) != 0 {
                if let Some(c) = level.coeff(j) {
                    if !c.is_zero() {
                        report
                            .violations
                            .push(format!("l = {l}: stray coefficient at x^-{j}"));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Build both pipelines for a scaling choice and compare.
pub fn dual_pipeline_for(
    family: Family,
    beta: &Rational,
    alpha1: &Rational,
    alpha2: &Rational,
    k_max: u32,
    l_max: u32,
) -> Result<SeriesCheckReport> {
    let stride: u32 = if family == Family::Gaussian { 2 } else { 1 };
    let stack = expansion_coefficients(family, beta, alpha1, alpha2, l_max, stride * k_max + 1)?;
    let table = coeff_table(
        family,
        beta.clone(),
        alpha1.clone(),
        Rational::zero(),
        alpha2.clone(),
        k_max,
        l_max.max(k_max),
    )?;
    dual_pipeline_check(&stack, &table, k_max, l_max)
}

/// Parity: for beta = 2 with the alpha scalings, odd levels vanish and the
/// recursions run over even l.
pub fn check_level_parity(stack: &ExpansionStack) -> SeriesCheckReport {
    let mut report = SeriesCheckReport::new("level-parity");
    for (l, u) in stack.levels.iter().enumerate() {
        if l % 2 == 1 {
            report.checked += 1;
            if !u.is_zero() {
                report.violations.push(format!("level {l} nonzero"));
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// printed per-level equations, checked on the computed stack
// ---------------------------------------------------------------------------

/// One term c * h^eps * OP acting on W^(l-d), already multiplied through by
/// the display's denominators so OP has polynomial coefficients.
struct PrintedTerm {
    d: u32,
    with_h: bool,
    coef: Rational,
    op: DiffOp<Rational>,
}

/// Inhomogeneity c * h^eps * poly appearing in the low-level displays.
struct PrintedInhom {
    with_h: bool,
    poly: PolyQ,
}

/// Evaluate a printed equation sum_terms = inhom at level l on the stack's
/// u-normalized levels; returns the residual series.
fn printed_residual(
    stack: &ExpansionStack,
    l: u32,
    terms: &[PrintedTerm],
    inhom: Option<&PrintedInhom>,
) -> Result<InvXSeries> {
    let kappa = stack.kappa();
    let e = &kappa - &Rational::one();
    let two = Rational::from_int(2);
    // norm(l-d)/norm(l), with one factor h folded in when asked; rational
    // because the h parity tracks the level-offset parity
    let norm_ratio = |d: u32, with_h: bool| -> Rational {
        match stack.family {
            Family::Gaussian | Family::Laguerre => {
                let base = if stack.family == Family::Gaussian {
                    two.pow(-(d as i32))
                } else {
                    Rational::one()
                };
                if with_h {
                    assert!(d % 2 == 1, "h factor with even level offset");
                    &(&base * &e) * &kappa.pow(-((d as i32 + 1) / 2))
                } else {
                    assert!(d % 2 == 0, "missing h factor at odd level offset");
                    &base * &kappa.pow(-(d as i32 / 2))
                }
            }
            Family::Jacobi => {
                assert!(!with_h);
                kappa.pow(-(d as i32))
            }
        }
    };
    let mut acc = InvXSeries::zero(stack.trunc);
    for t in terms {
        if t.d > l {
            continue;
        }
        let u = stack
            .level((l - t.d) as usize)
            .ok_or_else(|| Error::RangeTooSmall(format!("stack lacks level {}", l - t.d)))?;
        let applied = series_apply_diffop(&t.op, u)?;
        acc = acc.add(&applied.scale(&(&t.coef * &norm_ratio(t.d, t.with_h))));
    }
    if let Some(inh) = inhom {
        // inhom / norm(l)
        let f = match stack.family {
            Family::Gaussian | Family::Laguerre => {
                let base = if stack.family == Family::Gaussian {
                    two.pow(1 - l as i32)
                } else {
                    Rational::one()
                };
                if inh.with_h {
                    assert!(l % 2 == 1);
                    &(&base * &e) * &kappa.pow(-((l as i32 + 1) / 2))
                } else {
                    assert!(l % 2 == 0);
                    &base * &kappa.pow(-(l as i32 / 2))
                }
            }
            Family::Jacobi => kappa.pow(-(l as i32)),
        };
        let p = inh.poly.scale(&f);
        acc = acc.sub(&InvXSeries::new(BTreeMap::new(), p, acc.order()));
    }
    Ok(acc)
}

fn op1(coeffs: Vec<PolyQ>) -> DiffOp<Rational> {
    DiffOp::from_coeffs(coeffs)
}

fn px(cs: &[i64]) -> PolyQ {
    PolyQ::from_ints(cs)
}

/// Check all printed per-level equations applicable to this stack; each
/// report entry records one (equation, level) pair. Disagreements are
/// reported, not patched: the computed levels come from the graded engine.
pub fn check_printed_level_equations(stack: &ExpansionStack) -> Result<Vec<SeriesCheckReport>> {
    let mut out = Vec::new();
    let two = Rational::from_int(2);
    let four = Rational::from_int(4);
    let l_max = stack.levels.len().saturating_sub(1) as u32;
    let betas_14 = stack.beta == Rational::one() || stack.beta == four;
    let betas_36 = stack.beta == Rational::new(2, 3) || stack.beta == Rational::from_int(6);
    let is_two = stack.beta == two;

    let check = |id: String, res: InvXSeries| -> SeriesCheckReport {
        let mut r = SeriesCheckReport::new(id);
        r.checked = 1;
        if !res.is_zero() {
            let j = res
                .iter_nonzero()
                .next()
                .map(|(j, _)| j as i64)
                .unwrap_or(-1);
            r.violations.push(format!(
                "residual nonzero (first inverse power x^-{j}, head {})",
                res.head()
            ));
        }
        r
    };

    match stack.family {
        Family::Gaussian => {
            // y^2 = x^2 - 2 throughout (g = 1/2 scaled form)
            let y2 = px(&[-2, 0, 1]);
            let lhs0 = vec![PrintedTerm {
                d: 0,
                with_h: false,
                coef: Rational::one(),
                op: op1(vec![px(&[0, -1]), y2.clone()]),
            }];
            let inh0 = PrintedInhom { with_h: false, poly: px(&[-1]) };
            out.push(check(
                "g-level0 (universal)".into(),
                printed_residual(stack, 0, &lhs0, Some(&inh0))?,
            ));
            if is_two {
                // l >= 2 even: y^2 d W^l - x W^l = d^3 W^(l-2)
                for l in (2..=l_max).step_by(2) {
                    let terms = vec![
                        PrintedTerm {
                            d: 0,
                            with_h: false,
                            coef: Rational::one(),
                            op: op1(vec![px(&[0, -1]), y2.clone()]),
                        },
                        PrintedTerm {
                            d: 2,
                            with_h: false,
                            coef: Rational::from_int(-1),
                            op: op1(vec![
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                px(&[1]),
                            ]),
                        },
                    ];
                    out.push(check(
                        format!("g-beta2 level {l}"),
                        printed_residual(stack, l, &terms, None)?,
                    ));
                }
            } else if betas_14 {
                // multiplied through by y^2
                for l in 1..=l_max {
                    let mut terms = vec![
                        PrintedTerm {
                            d: 0,
                            with_h: false,
                            coef: Rational::one(),
                            op: op1(vec![px(&[0, 2, 0, -1]), y2.mul(&y2)]),
                        },
                        PrintedTerm {
                            d: 1,
                            with_h: true,
                            coef: Rational::from_int(-1),
                            op: op1(vec![px(&[0, -2]), y2.scale(&four)]),
                        },
                    ];
                    if l >= 2 {
                        terms.push(PrintedTerm {
                            d: 2,
                            with_h: false,
                            coef: Rational::from_int(-1),
                            op: op1(vec![
                                PolyQ::zero(),
                                px(&[1]),
                                px(&[0, -3]),
                                y2.scale(&Rational::new(5, 2)),
                            ]),
                        });
                    }
                    if l >= 3 {
                        terms.push(PrintedTerm {
                            d: 3,
                            with_h: true,
                            coef: Rational::from_int(5),
                            op: op1(vec![
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                px(&[1]),
                            ]),
                        });
                    }
                    if l >= 4 {
                        terms.push(PrintedTerm {
                            d: 4,
                            with_h: false,
                            coef: Rational::one(),
                            op: op1(vec![
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                px(&[1]),
                            ]),
                        });
                    }
                    let inh = if l == 1 {
                        Some(PrintedInhom { with_h: true, poly: px(&[5]) })
                    } else {
                        None
                    };
                    out.push(check(
                        format!("g-beta14 level {l}"),
                        printed_residual(stack, l, &terms, inh.as_ref())?,
                    ));
                }
            } else if betas_36 {
                // multiplied through by 36 y^4
                for l in 1..=l_max {
                    let mut terms = vec![
                        PrintedTerm {
                            d: 0,
                            with_h: false,
                            coef: Rational::from_int(36),
                            op: op1(vec![
                                y2.mul(&y2).mul(&px(&[0, -1])),
                                y2.mul(&y2).mul(&y2),
                            ]),
                        },
                        PrintedTerm {
                            d: 1,
                            with_h: true,
                            coef: Rational::one(),
                            op: op1(vec![
                                y2.mul(&px(&[0, 144])),
                                y2.mul(&y2).scale(&Rational::from_int(-216)),
                            ]),
                        },
                    ];
                    if l >= 2 {
                        terms.push(PrintedTerm {
                            d: 2,
                            with_h: false,
                            coef: Rational::from_int(-3),
                            op: op1(vec![
                                px(&[0, 25]),
                                px(&[216, 0, -57]),
                                y2.mul(&px(&[0, -78])),
                                y2.mul(&y2).scale(&Rational::from_int(49)),
                            ]),
                        });
                    }
                    if l >= 3 {
                        terms.push(PrintedTerm {
                            d: 3,
                            with_h: true,
                            coef: Rational::from_int(-12),
                            op: op1(vec![
                                PolyQ::zero(),
                                px(&[-10]),
                                px(&[0, 39]),
                                y2.scale(&Rational::from_int(-49)),
                            ]),
                        });
                    }
                    if l >= 4 {
                        terms.push(PrintedTerm {
                            d: 4,
                            with_h: false,
                            coef: Rational::from_int(-2),
                            op: op1(vec![
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                px(&[230]),
                                px(&[0, 63]),
                                y2.scale(&Rational::from_int(-63)),
                            ]),
                        });
                    }
                    if l >= 5 {
                        terms.push(PrintedTerm {
                            d: 5,
                            with_h: true,
                            coef: Rational::from_int(-252),
                            op: op1(vec![
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                px(&[1]),
                            ]),
                        });
                    }
                    if l >= 6 {
                        terms.push(PrintedTerm {
                            d: 6,
                            with_h: false,
                            coef: Rational::from_int(-27),
                            op: op1(vec![
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                PolyQ::zero(),
                                px(&[1]),
                            ]),
                        });
                    }
                    let inh = match l {
                        1 => Some(PrintedInhom { with_h: true, poly: y2.scale(&Rational::from_int(252)) }),
                        2 => Some(PrintedInhom { with_h: false, poly: px(&[-516]) }),
                        _ => None,
                    };
                    out.push(check(
                        format!("g-beta36 level {l}"),
                        printed_residual(stack, l, &terms, inh.as_ref())?,
                    ));
                }
            }
        }
        Family::Laguerre => {
            let a1 = stack.alpha1.clone();
            if is_two {
                // level ODEs for the LUE scaling a = alpha1 N
                let y = PolyQ::from_rationals(&[
                    -(&a1 * &a1),
                    &four + &(&a1 * &two),
                    Rational::from_int(-1),
                ]);
                let lin = PolyQ::from_rationals(&[-(&a1 * &a1), &a1 + &two]);
                for l in (0..=l_max).step_by(2) {
                    let mut terms = vec![PrintedTerm {
                        d: 0,
                        with_h: false,
                        coef: Rational::one(),
                        op: op1(vec![lin.clone(), y.mul(&PolyQ::var())]),
                    }];
                    if l >= 2 {
                        terms.push(PrintedTerm {
                            d: 2,
                            with_h: false,
                            coef: Rational::one(),
                            op: op1(vec![
                                PolyQ::zero(),
                                px(&[0, 2]),
                                px(&[0, 0, 4]),
                                px(&[0, 0, 0, 1]),
                            ]),
                        });
                    }
                    let inh = if l == 0 {
                        Some(PrintedInhom {
                            with_h: false,
                            poly: PolyQ::from_rationals(&[a1.clone(), Rational::one()]),
                        })
                    } else {
                        None
                    };
                    out.push(check(
                        format!("lue level {l}"),
                        printed_residual(stack, l, &terms, inh.as_ref())?,
                    ));
                }
            } else if betas_14 {
                // LOE displays; the LSE satisfies the same at alpha1/4
                let al = if stack.beta == four { &a1 / &four } else { a1.clone() };
                let y1 = PolyQ::from_rationals(&[
                    &(&al * &al) * &four,
                    -(&(&al * &four) + &four),
                    Rational::one(),
                ]);
                let lin = PolyQ::from_rationals(&[
                    &(&al * &al) * &(-&two),
                    &al + &Rational::one(),
                ]);
                let lhs0 = vec![PrintedTerm {
                    d: 0,
                    with_h: false,
                    coef: Rational::one(),
                    op: op1(vec![
                        lin.scale(&two),
                        y1.mul(&PolyQ::var()).scale(&Rational::from_int(-1)),
                    ]),
                }];
                let inh0 = PrintedInhom {
                    with_h: false,
                    poly: PolyQ::from_rationals(&[&al * &two, Rational::one()]),
                };
                out.push(check(
                    "loe level 0".into(),
                    printed_residual(stack, 0, &lhs0, Some(&inh0))?,
                ));
                let q1 = PolyQ::from_rationals(&[
                    &(&al * &al) * &Rational::from_int(8),
                    -(&(&al + &Rational::one()) * &Rational::from_int(6)),
                    Rational::one(),
                ]);
                for l in 1..=l_max {
                    let mut terms = vec![
                        PrintedTerm {
                            d: 0,
                            with_h: false,
                            coef: Rational::one(),
                            op: op1(vec![
                                y1.mul(&lin).scale(&(-&two)),
                                y1.mul(&y1).mul(&PolyQ::var()),
                            ]),
                        },
                        PrintedTerm {
                            d: 1,
                            with_h: true,
                            coef: Rational::from_int(-4),
                            op: op1(vec![
                                q1.scale(&al),
                                y1.mul(&PolyQ::var()).scale(&(&al * &two)),
                            ]),
                        },
                    ];
                    if l >= 2 {
                        let q2 = PolyQ::from_rationals(&[
                            &(&al * &al) * &Rational::from_int(44),
                            -(&(&al + &Rational::one()) * &Rational::from_int(38)),
                            Rational::from_int(8),
                        ]);
                        let q3 = PolyQ::from_rationals(&[
                            &(&al * &al) * &Rational::from_int(10),
                            -(&(&al + &Rational::one()) * &Rational::from_int(6)),
                            Rational::one(),
                        ]);
                        let q4 = PolyQ::from_rationals(&[
                            &(&al * &al) * &Rational::from_int(-8),
                            &(&al + &Rational::one()) * &four,
                        ]);
                        terms.push(PrintedTerm {
                            d: 2,
                            with_h: false,
                            coef: Rational::from_int(-1),
                            op: op1(vec![
                                q4,
                                q3.mul(&PolyQ::var()).scale(&two),
                                q2.mul(&PolyQ::var().pow(2)),
                                y1.mul(&PolyQ::var().pow(3)).scale(&Rational::new(5, 2)),
                            ]),
                        });
                    }
                    if l >= 3 {
                        terms.push(PrintedTerm {
                            d: 3,
                            with_h: true,
                            coef: &two * &al,
                            op: op1(vec![
                                PolyQ::zero(),
                                px(&[0, 14]),
                                px(&[0, 0, 22]),
                                px(&[0, 0, 0, 5]),
                            ]),
                        });
                    }
                    if l >= 4 {
                        terms.push(PrintedTerm {
                            d: 4,
                            with_h: false,
                            coef: Rational::one(),
                            op: op1(vec![
                                PolyQ::zero(),
                                px(&[0, -4]),
                                px(&[0, 0, 4]),
                                px(&[0, 0, 0, 22]),
                                px(&[0, 0, 0, 0, 10]),
                                px(&[0, 0, 0, 0, 0, 1]),
                            ]),
                        });
                    }
                    let inh = if l == 1 {
                        Some(PrintedInhom {
                            with_h: true,
                            poly: PolyQ::from_rationals(&[
                                &(&al * &al) * &Rational::from_int(8),
                                &(&al * &four) - &Rational::one(),
                                Rational::one(),
                            ])
                            .scale(&two),
                        })
                    } else if l == 2 {
                        Some(PrintedInhom {
                            with_h: false,
                            poly: PolyQ::from_rationals(&[
                                &(&al * &(-&two)) * &two,
                                -&two,
                            ]),
                        })
                    } else {
                        None
                    };
                    out.push(check(
                        format!("loe level {l}"),
                        printed_residual(stack, l, &terms, inh.as_ref())?,
                    ));
                }
            }
        }
        Family::Jacobi => {
            if is_two {
                // the JUE displays checked verbatim; see the notes on the
                // level-0 display in the repository tests
                let (a1, a2) = (&stack.alpha1, &stack.alpha2);
                let s = &(a1 + a2) + &two;
                let lead = PolyQ::from_rationals(&[
                    a1 * a1,
                    &(&(a1 + &two) * &(a1 + a2)) * &(-&two),
                    &s * &s,
                ])
                .mul(&px(&[0, -1, 1]));
                let bterm = {
                    let c1 = px(&[-1, 1]).pow(3).scale(&(a1 * a1));
                    let c2 = px(&[0, 1, -3, 2]).scale(&(a1 * &(a2 + &two)));
                    let c3 = px(&[0, 0, 0, 1]).scale(&(&(a2 + &two) * &(a2 + &two)));
                    let c4 = px(&[0, 1, 3]).scale(&(&(a2 + &Rational::one()) * &(-&two)));
                    c1.add(&c2).add(&c3).add(&c4)
                };
                for l in (0..=l_max).step_by(2) {
                    let mut terms = vec![PrintedTerm {
                        d: 0,
                        with_h: false,
                        coef: Rational::one(),
                        op: op1(vec![bterm.clone(), lead.clone()]),
                    }];
                    if l >= 2 {
                        let xm1 = px(&[-1, 1]);
                        let xxm1 = PolyQ::var().mul(&xm1);
                        terms.push(PrintedTerm {
                            d: 2,
                            with_h: false,
                            coef: Rational::from_int(-1),
                            op: op1(vec![
                                xxm1.mul(&px(&[1, -2])).scale(&(-&two)),
                                xxm1.mul(&xxm1.scale(&Rational::from_int(7)).add(&PolyQ::one()))
                                    .scale(&two),
                                xxm1.pow(2).mul(&px(&[1, -2])).scale(&(-&four)),
                                xxm1.pow(3),
                            ]),
                        });
                    }
                    let inh = if l == 0 {
                        Some(PrintedInhom {
                            with_h: false,
                            poly: PolyQ::from_rationals(&[a1.clone(), a2 - a1])
                                .scale(&(&(a1 + a2) + &Rational::one())),
                        })
                    } else {
                        None
                    };
                    out.push(check(
                        format!("jue level {l} (printed display)"),
                        printed_residual(stack, l, &terms, inh.as_ref())?,
                    ));
                }
            }
        }
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
    fn resolvent_series_examples() {
        // GUE N=1, J=6: 1/x + (1/2) x^-3 + (3/4) x^-5
        let spec = EnsembleSpec::gaussian(ri(2), ri(1));
        let w = resolvent_series(&spec, 6).unwrap();
        assert_eq!(w.coeff(1).unwrap(), ri(1));
        assert_eq!(w.coeff(3).unwrap(), Rational::new(1, 2));
        assert_eq!(w.coeff(5).unwrap(), Rational::new(3, 4));
        assert_eq!(w.coeff(2).unwrap(), Rational::zero());

        // JUE a=b=0, N=1, J=4: sum x^(-k-1)/(k+1)
        let spec = EnsembleSpec::jacobi(ri(2), ri(1), ri(0), ri(0));
        let w = resolvent_series(&spec, 4).unwrap();
        for k in 0..4u32 {
            assert_eq!(w.coeff(k + 1).unwrap(), Rational::new(1, k as i64 + 1));
        }
    }

    #[test]
    fn resolvent_ode_residuals() {
        let spec = EnsembleSpec::gaussian(ri(2), ri(1));
        let r = check_resolvent_ode(&spec, 12).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.polynomial_part, PolyQ::constant(ri(2)));

        let spec = EnsembleSpec::laguerre(ri(2), ri(2), ri(1));
        let r = check_resolvent_ode(&spec, 12).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.polynomial_part, PolyQ::from_ints(&[1, 1]));

        let spec = EnsembleSpec::jacobi(ri(2), ri(3), ri(1), ri(2));
        let r = check_resolvent_ode(&spec, 12).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.polynomial_part, PolyQ::from_ints(&[6, 6]));
    }

    #[test]
    fn gaussian_level0_semicircle() {
        // u_0 = 2 W^0 has the Catalan content C_k / 2^k at x^(-2k-1)
        let stack = expansion_coefficients(
            Family::Gaussian,
            &ri(2),
            &Rational::zero(),
            &Rational::zero(),
            0,
            21,
        )
        .unwrap();
        let u0 = &stack.levels[0];
        let mut catalan = vec![ri(1)];
        for k in 1..=10usize {
            let prev = catalan[k - 1].clone();
            catalan.push(&prev * &Rational::new(2 * (2 * k as i64 - 1), k as i64 + 1));
        }
        for k in 0..=10u32 {
            let expect = &catalan[k as usize] / &ri(2).pow(k as i32);
            assert_eq!(u0.coeff(2 * k + 1).unwrap(), expect, "k = {k}");
        }
        // and W^0 = u_0/2 starts 1/(2x) + 1/(4x^3)
        assert_eq!(u0.coeff(1).unwrap(), ri(1));
        assert_eq!(u0.coeff(3).unwrap(), Rational::new(1, 2));
    }

    #[test]
    fn lue_odd_levels_vanish() {
        let stack =
            expansion_coefficients(Family::Laguerre, &ri(2), &ri(1), &Rational::zero(), 3, 13)
                .unwrap();
        let r = check_level_parity(&stack);
        assert!(r.ok(), "{:?}", r.violations);
    }

    #[test]
    fn dual_pipeline_small() {
        for (family, beta, a1, a2) in [
            (Family::Gaussian, ri(2), Rational::zero(), Rational::zero()),
            (Family::Gaussian, ri(1), Rational::zero(), Rational::zero()),
            (Family::Laguerre, ri(2), ri(1), Rational::zero()),
            (Family::Jacobi, ri(2), ri(1), ri(1)),
        ] {
            let r = dual_pipeline_for(family, &beta, &a1, &a2, 6, 3).unwrap();
            assert!(
                r.ok(),
                "family {family:?} beta {beta}: {:?}",
                &r.violations[..r.violations.len().min(3)]
            );
        }
    }

    #[test]
    fn w0_universality_gaussian() {
        let betas = [Rational::new(2, 3), ri(1), ri(2), ri(4), ri(6)];
        let r = w0_universality_check(
            Family::Gaussian,
            &betas,
            &Rational::zero(),
            &Rational::zero(),
            20,
        )
        .unwrap();
        assert!(r.ok(), "{:?}", r.violations);
    }

    #[test]
    fn printed_level_equations_gaussian_and_laguerre() {
        for (family, beta, a1) in [
            (Family::Gaussian, ri(2), Rational::zero()),
            (Family::Gaussian, ri(1), Rational::zero()),
            (Family::Gaussian, ri(4), Rational::zero()),
            (Family::Gaussian, Rational::new(2, 3), Rational::zero()),
            (Family::Gaussian, ri(6), Rational::zero()),
            (Family::Laguerre, ri(2), ri(1)),
            (Family::Laguerre, ri(1), ri(1)),
            (Family::Laguerre, ri(4), ri(1)),
        ] {
            let stack =
                expansion_coefficients(family, &beta, &a1, &Rational::zero(), 4, 17).unwrap();
            let reports = check_printed_level_equations(&stack).unwrap();
            for r in reports {
                assert!(r.ok(), "{family:?} beta {beta} {}: {:?}", r.id, r.violations);
            }
        }
    }

    #[test]
    fn jue_printed_display_mismatch_is_recorded() {
        // The printed level-0 JUE display conflicts with both pipelines: at
        // a = b = 0 the level-0 series is the arcsine transform
        // 1/sqrt(x(x-1)), and the display's residual on it has head -4x.
        // The engine-derived equations (validated by the dual pipeline) are
        // the computational path; the display check records the mismatch.
        let stack = expansion_coefficients(
            Family::Jacobi,
            &ri(2),
            &Rational::zero(),
            &Rational::zero(),
            2,
            13,
        )
        .unwrap();
        let reports = check_printed_level_equations(&stack).unwrap();
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(!r.ok(), "{} unexpectedly verified", r.id);
        }
        assert!(reports[0].violations[0].contains("head (-4)*x"));
    }
}

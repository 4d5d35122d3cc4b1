use alloc::format;
use alloc::vec::Vec;

use super::{CheckParams, PnSpace, VectorSpace};
use crate::ddf::Ddf;
use crate::error::{Error, Result};
use crate::math;
use crate::report::{witness, Check, Report};
use crate::sampling::{add, scale, Sampler};
use crate::triangle::{compare_ddfs, excess, probe_points, thin, EvalPath, Relation, TriangleFn};

/// Evaluation points per sample for exact and grid paths.
pub(super) const EXACT_POINTS: usize = 400;
pub(super) const GRID_POINTS_PER_SAMPLE: usize = 48;

pub(super) fn grid_for(fs: &[&Ddf], tau: &TriangleFn) -> Vec<f64> {
    let cap = match tau.path() {
        EvalPath::Exact => EXACT_POINTS,
        EvalPath::Grid => GRID_POINTS_PER_SAMPLE,
    };
    thin(probe_points(fs, &tau.constraint_op()), cap)
}

pub(super) fn tol_for(tau: &TriangleFn, params: &CheckParams) -> f64 {
    match tau.path() {
        EvalPath::Exact => params.tol.exact,
        EvalPath::Grid => params.tol.grid,
    }
}

/// Pairs `(p, q)` mixing `q = p`, `q = c·p`, `q = θ` and independent draws.
pub(super) fn sample_pairs(space: &VectorSpace, rng: &mut Sampler, n: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
    (0..n.max(1))
        .map(|i| {
            let p = rng.vector(space);
            let q = match i % 5 {
                0 => p.clone(),
                1 => {
                    let c = rng.log_uniform(0.1, 10.0);
                    scale(&p, c)
                }
                2 => space.zero(),
                _ => rng.vector(space),
            };
            (p, q)
        })
        .collect()
}

/// `(p, λ)` with `λ` running through `{0, 1/2, 1}` and uniform draws.
pub(super) fn sample_splits(space: &VectorSpace, rng: &mut Sampler, n: usize) -> Vec<(Vec<f64>, f64)> {
    let lambdas = rng.lambdas(n.max(1));
    (0..n.max(1)).map(|i| (rng.vector(space), lambdas[i % lambdas.len()])).collect()
}

pub(super) fn n1_check(s: &PnSpace, rng: &mut Sampler, params: &CheckParams) -> Check {
    let mut n1 = Check::new("N1", 0.0).with_path("exact");
    let zero = s.nu_unchecked(&s.space.zero());
    // ν_θ = ε_0: equal to 1 at every x > 0
    for x in [1e-300, 1e-12, 1e-3, 1.0, 1e6] {
        n1.observe(1.0 - zero.eval(x), || witness(&[("p", &s.space.zero()), ("x", &[x])]));
    }
    // ν_p ≠ ε_0 for p ≠ θ: the quasi-inverse at 1 is positive
    for _ in 0..params.samples.max(1) {
        let p = rng.vector(&s.space);
        let q1 = s.nu_unchecked(&p).quasi_inverse().eval(1.0);
        n1.observe(if q1 > 0.0 { 0.0 } else { 1.0 }, || witness(&[("p", &p)]));
    }
    n1.finish();
    n1
}

pub(super) fn n2_check(s: &PnSpace, rng: &mut Sampler, params: &CheckParams) -> Check {
    let mut n2 = Check::new("N2", params.tol.exact).with_path("exact");
    for _ in 0..params.samples.max(1) {
        let p = rng.vector(&s.space);
        let m = scale(&p, -1.0);
        let (a, b) = (s.nu_unchecked(&p), s.nu_unchecked(&m));
        for x in thin(probe_points(&[&a], &crate::tnorms::LOp::Sum), 64) {
            n2.observe(math::abs(a.eval(x) - b.eval(x)), || witness(&[("p", &p), ("x", &[x])]));
        }
    }
    n2.finish();
    n2
}

/// `ν_{p+q} ≥ τ(ν_p, ν_q)` on sampled pairs.
pub(super) fn n3_check(s: &PnSpace, tau: &TriangleFn, rng: &mut Sampler, params: &CheckParams) -> Check {
    let mut n3 = Check::new("N3", tol_for(tau, params)).with_path(tau.path().as_str());
    for (p, q) in sample_pairs(&s.space, rng, params.samples) {
        let (np, nq) = (s.nu_unchecked(&p), s.nu_unchecked(&q));
        let sum = add(&p, &q);
        let nsum = s.nu_unchecked(&sum);
        let t = tau.apply(&np, &nq);
        for x in grid_for(&[&np, &nq, &nsum], tau) {
            n3.observe(excess(&t, &nsum, x).max(0.0), || witness(&[("p", &p), ("q", &q), ("x", &[x])]));
        }
    }
    n3.finish();
    n3
}

/// `ν_p ≤ τ*(ν_{λp}, ν_{(1−λ)p})` on sampled `(p, λ)`.
pub(super) fn n4_check(s: &PnSpace, tau_star: &TriangleFn, rng: &mut Sampler, params: &CheckParams) -> Check {
    let mut n4 = Check::new("N4", tol_for(tau_star, params)).with_path(tau_star.path().as_str());
    for (p, lambda) in sample_splits(&s.space, rng, params.samples) {
        let np = s.nu_unchecked(&p);
        let (a, b) = (s.nu_unchecked(&scale(&p, lambda)), s.nu_unchecked(&scale(&p, 1.0 - lambda)));
        let t = tau_star.apply(&a, &b);
        for x in grid_for(&[&np, &a, &b], tau_star) {
            n4.observe(excess(&np, &t, x).max(0.0), || witness(&[("p", &p), ("lambda", &[lambda]), ("x", &[x])]));
        }
    }
    n4.finish();
    n4
}

/// Sample (N1)–(N4) for `s`.
pub fn check_pn_axioms(s: &PnSpace, params: &CheckParams) -> Report {
    let mut rng = Sampler::new(params.seed);
    let mut report = Report::new(format!("PN axioms with tau = {}, tau* = {}", s.tau.name(), s.tau_star.name()));
    report.push(n1_check(s, &mut rng, params));
    report.push(n2_check(s, &mut rng, params));
    report.push(n3_check(s, &s.tau, &mut rng, params));
    report.push(n4_check(s, &s.tau_star, &mut rng, params));
    report
}

/// Outcome of comparing two PN structures on the same `(V, ν)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Ordering {
    Better,
    Worse,
    Equal,
    Incomparable,
}

#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Betterness {
    pub ordering: Ordering,
    /// `τ_1(ν_p, ν_q)` against `τ_2(ν_p, ν_q)` over all samples.
    pub tau: Relation,
    /// `τ*_1` against `τ*_2` over all samples.
    pub tau_star: Relation,
    /// Checks of the two conditions for `S1` to be better than `S2`.
    pub report: Report,
}

impl Betterness {
    /// Non-strict: `S1` is better than `S2`, which includes the case where they coincide.
    pub fn is_better(&self) -> bool {
        matches!(self.ordering, Ordering::Better | Ordering::Equal)
    }

    /// Non-strict: `S2` is better than `S1`.
    pub fn is_worse(&self) -> bool {
        matches!(self.ordering, Ordering::Worse | Ordering::Equal)
    }
}

/// Is `s1` better than `s2`: `τ_1 ≥ τ_2` on `(ν_p, ν_q)` and `τ*_1 ≤ τ*_2` on `(ν_{λp}, ν_{(1−λ)p})`?
pub fn better_than(s1: &PnSpace, s2: &PnSpace, params: &CheckParams) -> Result<Betterness> {
    if s1.space != s2.space {
        return Err(Error::DifferentNorms(format!("vector spaces differ: {:?} vs {:?}", s1.space, s2.space)));
    }
    let mut rng = Sampler::new(params.seed);
    for _ in 0..params.samples.max(1) {
        let p = rng.vector(&s1.space);
        let (a, b) = (s1.nu_unchecked(&p), s2.nu_unchecked(&p));
        let grid = thin(probe_points(&[&a, &b], &crate::tnorms::LOp::Sum), 64);
        for x in grid {
            if math::abs(a.eval(x) - b.eval(x)) > params.tol.exact {
                return Err(Error::DifferentNorms(format!("nu_p differs at p = {p:?}, x = {x}")));
            }
        }
    }

    let tol = tol_for(&s1.tau, params).max(tol_for(&s2.tau, params));
    let mut ge = Check::new("tau_1 >= tau_2", tol);
    let mut le = Check::new("tau_2 >= tau_1", tol);
    for (p, q) in sample_pairs(&s1.space, &mut rng, params.samples) {
        let (np, nq) = (s1.nu_unchecked(&p), s1.nu_unchecked(&q));
        let (t1, t2) = (s1.tau.apply(&np, &nq), s2.tau.apply(&np, &nq));
        let grid = if s1.tau.path() == EvalPath::Grid { grid_for(&[&np, &nq], &s1.tau) } else { grid_for(&[&np, &nq], &s2.tau) };
        let c = compare_ddfs(&t1, &t2, &grid, tol);
        ge.observe(c.b_over_a.0.max(0.0), || witness(&[("p", &p), ("q", &q), ("x", &[c.b_over_a.1])]));
        le.observe(c.a_over_b.0.max(0.0), || witness(&[("p", &p), ("q", &q), ("x", &[c.a_over_b.1])]));
    }
    ge.finish();
    le.finish();

    let tol_s = tol_for(&s1.tau_star, params).max(tol_for(&s2.tau_star, params));
    let mut sle = Check::new("tau*_1 <= tau*_2", tol_s);
    let mut sge = Check::new("tau*_2 <= tau*_1", tol_s);
    for (p, lambda) in sample_splits(&s1.space, &mut rng, params.samples) {
        let (a, b) = (s1.nu_unchecked(&scale(&p, lambda)), s1.nu_unchecked(&scale(&p, 1.0 - lambda)));
        let (t1, t2) = (s1.tau_star.apply(&a, &b), s2.tau_star.apply(&a, &b));
        let grid = if s1.tau_star.path() == EvalPath::Grid {
            grid_for(&[&a, &b], &s1.tau_star)
        } else {
            grid_for(&[&a, &b], &s2.tau_star)
        };
        let c = compare_ddfs(&t1, &t2, &grid, tol_s);
        sle.observe(c.a_over_b.0.max(0.0), || witness(&[("p", &p), ("lambda", &[lambda]), ("x", &[c.a_over_b.1])]));
        sge.observe(c.b_over_a.0.max(0.0), || witness(&[("p", &p), ("lambda", &[lambda]), ("x", &[c.b_over_a.1])]));
    }
    sle.finish();
    sge.finish();

    let tau = Relation::from_flags(le.passed, ge.passed);
    let tau_star = Relation::from_flags(sle.passed, sge.passed);
    let ordering = match (tau, tau_star) {
        (Relation::Eq, Relation::Eq) => Ordering::Equal,
        (Relation::Ge | Relation::Eq, Relation::Le | Relation::Eq) => Ordering::Better,
        (Relation::Le | Relation::Eq, Relation::Ge | Relation::Eq) => Ordering::Worse,
        _ => Ordering::Incomparable,
    };
    let mut report = Report::new("better-than comparison");
    report.note(format!("ordering: {ordering:?}"));
    report.push(ge);
    report.push(sle);
    Ok(Betterness { ordering, tau, tau_star, report })
}

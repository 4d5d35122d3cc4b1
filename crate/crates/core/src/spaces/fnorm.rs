use alloc::format;
use alloc::vec;

use super::axioms::{check_pn_axioms, sample_pairs};
use super::serstnev::check_serstnev;
use super::{CheckParams, FNorm, PnSpace, SerstnevKind, VectorSpace};
use crate::ddf::Ddf;
use crate::error::{Error, Result};
use crate::math;
use crate::report::{witness, Check, Report};
use crate::sampling::{add, scale, Sampler};
use crate::triangle::{excess, TriangleFn};

/// Sample the F-norm axioms: (i) `g(p) = 0` iff `p = θ`, (ii) `g(λp) ≤ g(p)` for
/// `|λ| ≤ 1`, (iii) `g(p + q) ≤ g(p) + g(q)`.
pub fn check_fnorm_axioms(space: &VectorSpace, g: &FNorm, params: &CheckParams) -> Report {
    let tol = params.tol.exact;
    let mut rng = Sampler::new(params.seed);
    let mut report = Report::new(format!("F-norm axioms for {g:?}"));

    let mut zero = Check::new("(i) g(p) = 0 iff p = 0", 0.0);
    let z = space.zero();
    zero.observe(math::abs(g.eval(space, &z)), || witness(&[("p", &z)]));
    for _ in 0..params.samples.max(1) {
        let p = rng.vector(space);
        zero.observe(if g.eval(space, &p) > 0.0 { 0.0 } else { 1.0 }, || witness(&[("p", &p)]));
    }
    zero.finish();

    let mut shrink = Check::new("(ii) g(lambda p) <= g(p) for |lambda| <= 1", tol);
    let mut lambdas = vec![0.0, 1.0, -1.0, 0.5, -0.5];
    for _ in 0..params.samples.max(1) {
        lambdas.push(rng.uniform(-1.0, 1.0));
    }
    for (i, &lambda) in lambdas.iter().enumerate() {
        let p = rng.vector(space);
        let gp = g.eval(space, &p);
        let v = (g.eval(space, &scale(&p, lambda)) - gp) / gp.max(1.0);
        shrink.observe(v.max(0.0), || witness(&[("p", &p), ("lambda", &[lambda]), ("sample", &[i as f64])]));
    }
    shrink.finish();

    let mut sub = Check::new("(iii) g(p + q) <= g(p) + g(q)", tol);
    for (p, q) in sample_pairs(space, &mut rng, params.samples) {
        let rhs = g.eval(space, &p) + g.eval(space, &q);
        let v = (g.eval(space, &add(&p, &q)) - rhs) / rhs.max(1.0);
        sub.observe(v.max(0.0), || witness(&[("p", &p), ("q", &q)]));
    }
    sub.finish();

    report.push(zero);
    report.push(shrink);
    report.push(sub);
    report
}

/// `g(λp) = |λ| g(p)` on samples.
fn homogeneity_check(space: &VectorSpace, g: &FNorm, params: &CheckParams) -> Check {
    let mut rng = Sampler::new(params.seed ^ 0x4057);
    let mut c = Check::new("g(lambda p) = |lambda| g(p)", params.tol.exact);
    for lambda in rng.nonzero_scalars(params.samples) {
        let p = rng.vector(space);
        let gp = g.eval(space, &p);
        let d = math::rel_gap(g.eval(space, &scale(&p, lambda)), math::abs(lambda) * gp);
        c.observe(d, || witness(&[("p", &p), ("lambda", &[lambda])]));
    }
    c.finish();
    c
}

/// Worst violations of `τ(ε_a, ε_b) ≤ ε_{a+b}` and `τ(ε_a, ε_b) ≥ ε_{a+b}` on samples.
fn step_sum_relation(tau: &TriangleFn, params: &CheckParams) -> (Check, Check) {
    let mut rng = Sampler::new(params.seed ^ 0xab);
    let mut le = Check::new("tau(eps_a, eps_b) <= eps_(a+b)", params.tol.grid).with_path(tau.path().as_str());
    let mut ge = Check::new("tau(eps_a, eps_b) >= eps_(a+b)", params.tol.grid).with_path(tau.path().as_str());
    for i in 0..params.samples.clamp(1, 20) {
        let (a, b) = if i == 0 { (0.0, 1.0) } else { (rng.log_uniform(1e-2, 1e2), rng.log_uniform(1e-2, 1e2)) };
        let t = tau.apply(&Ddf::Step(a), &Ddf::Step(b));
        let s = Ddf::Step(a + b);
        let c = a + b;
        for x in [c * 0.5, c * (1.0 - 1e-6), c, c * (1.0 + 1e-6), c * 1.01, c * 2.0] {
            let w = || witness(&[("a", &[a]), ("b", &[b]), ("x", &[x])]);
            le.observe(excess(&t, &s, x).max(0.0), w);
            ge.observe(excess(&s, &t, x).max(0.0), w);
        }
    }
    le.finish();
    ge.finish();
    (le, ge)
}

fn implication(name: &str, premise: bool, conclusion: bool) -> Check {
    let mut c = Check::new(name, 0.0);
    c.observe(if !premise || conclusion { 0.0 } else { 1.0 }, || {
        witness(&[("premise", &[premise as u8 as f64]), ("conclusion", &[conclusion as u8 as f64])])
    });
    c.finish();
    c
}

fn prefixed(report: Report, suffix: &str) -> Report {
    let mut out = Report::new(report.title);
    out.notes = report.notes;
    for mut c in report.checks {
        c.name = format!("{} {suffix}", c.name);
        out.push(c);
    }
    out
}

/// From an F-norm candidate `g` to the space `(V, ε_g, τ_M, M)`.
///
/// The report lists the F-norm axioms, the PN axioms of the induced space,
/// the Šerstnev condition and homogeneity, and three claims: F-norm iff PN,
/// `τ_M(ε_a, ε_b) ≤ ε_{a+b}`, and norm iff Šerstnev. Only the claims decide
/// [`Report::passed`] of the returned claims report; the rest are evidence.
pub fn fnorm_to_pn(space: &VectorSpace, g: &FNorm, params: &CheckParams) -> Correspondence {
    let fnorm_axioms = check_fnorm_axioms(space, g, params);
    let s = PnSpace::eps_of_g(space.clone(), g.clone());
    let pn_axioms = prefixed(check_pn_axioms(&s, params), "of (V, eps_g, tau_M, M)");
    let serstnev = scaling_report(&s, g, params);
    let (le, _) = step_sum_relation(&s.tau, params);
    let is_norm = fnorm_axioms.passed() && serstnev.checks[1].passed;
    let mut claims = Report::new(format!("F-norm / PN correspondence for {g:?}"));
    let mut iff = Check::new("F-norm iff PN space", 0.0);
    iff.observe(if fnorm_axioms.passed() == pn_axioms.passed() { 0.0 } else { 1.0 }, || {
        witness(&[
            ("fnorm_passed", &[fnorm_axioms.passed() as u8 as f64]),
            ("pn_passed", &[pn_axioms.passed() as u8 as f64]),
        ])
    });
    iff.finish();
    claims.push(iff);
    let le_holds = le.passed;
    claims.push(le);
    claims.push(implication("norm implies Serstnev", le_holds && is_norm, serstnev.checks[0].passed));
    claims.push(implication("Serstnev implies norm", le_holds && serstnev.checks[0].passed, is_norm));
    Correspondence { fnorm_axioms, pn_axioms, serstnev, claims }
}

fn scaling_report(s: &PnSpace, g: &FNorm, params: &CheckParams) -> Report {
    let mut r = check_serstnev(s, &SerstnevKind::Plain, params);
    r.push(homogeneity_check(&s.space, g, params));
    r
}

/// From a space `(V, ε_g, τ, τ*)` back to `g`.
///
/// Claims: if `τ(ε_a, ε_b) ≥ ε_{a+b}` and the space is PN then `g` is an
/// F-norm; if `τ(ε_a, ε_b) ≤ ε_{a+b}` then `g` is a norm iff the space is
/// Šerstnev.
pub fn pn_to_fnorm(s: &PnSpace, params: &CheckParams) -> Result<Correspondence> {
    let g = s
        .norm
        .as_fnorm()
        .ok_or_else(|| Error::NotInClass(format!("{:?} is not of the form eps_g", s.norm)))?
        .clone();
    let fnorm_axioms = check_fnorm_axioms(&s.space, &g, params);
    let pn_axioms = check_pn_axioms(s, params);
    let serstnev = scaling_report(s, &g, params);
    let (le, ge) = step_sum_relation(&s.tau, params);
    let is_norm = fnorm_axioms.passed() && serstnev.checks[1].passed;
    let mut claims = Report::new(format!("PN / F-norm correspondence for {g:?}"));
    claims.push(implication("PN space implies F-norm", ge.passed && pn_axioms.passed(), fnorm_axioms.passed()));
    if !ge.passed {
        claims.note("tau(eps_a, eps_b) >= eps_(a+b) fails: the F-norm implication is vacuous");
    }
    if !le.passed {
        claims.note("tau(eps_a, eps_b) <= eps_(a+b) fails: the norm/Serstnev equivalence is vacuous");
    }
    let le_holds = le.passed;
    claims.push(implication("norm implies Serstnev", le_holds && is_norm, serstnev.checks[0].passed));
    claims.push(implication("Serstnev implies norm", le_holds && serstnev.checks[0].passed, is_norm));
    Ok(Correspondence { fnorm_axioms, pn_axioms, serstnev, claims })
}

/// Evidence and claims relating an F-norm `g` to the space `(V, ε_g, τ, τ*)`.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Correspondence {
    pub fnorm_axioms: Report,
    pub pn_axioms: Report,
    /// The Šerstnev condition, then homogeneity of `g`.
    pub serstnev: Report,
    pub claims: Report,
}

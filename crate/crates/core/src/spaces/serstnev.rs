use alloc::format;
use alloc::vec::Vec;

use super::axioms::{check_pn_axioms, n2_check, sample_splits};
use super::{CheckParams, PnSpace};
use crate::error::{Error, Result};
use crate::math;
use crate::phi::PhiMap;
use crate::report::{witness, Check, Report};
use crate::sampling::{scale, Sampler};
use crate::tnorms::LOp;
use crate::triangle::{excess, probe_points, thin, TriangleFn, JUMP_SLACK};

/// Scaling laws `ν_{λp}(x) = ν_p(φ^(φ(x)/|λ|))`.
#[derive(Clone, Debug, PartialEq)]
pub enum SerstnevKind {
    /// `ν_{λp}(x) = ν_p(x/|λ|)`.
    Plain,
    /// `ν_{λp}(x) = ν_p(x/|λ|^α)`.
    Alpha(f64),
    Phi(PhiMap),
}

impl SerstnevKind {
    pub fn phi(&self) -> PhiMap {
        match self {
            SerstnevKind::Plain => PhiMap::identity(),
            SerstnevKind::Alpha(a) => PhiMap::Power(*a),
            SerstnevKind::Phi(p) => p.clone(),
        }
    }

    fn label(&self) -> &'static str {
        match self {
            SerstnevKind::Plain => "Serstnev",
            SerstnevKind::Alpha(_) => "alpha-Serstnev",
            SerstnevKind::Phi(_) => "phi-Serstnev",
        }
    }
}

/// `[λ^α + (1 − λ)^α]^{1/α}`.
pub fn beta(lambda: f64, alpha: f64) -> f64 {
    math::powf(math::powf(lambda, alpha) + math::powf(1.0 - lambda, alpha), 1.0 / alpha)
}

/// Two-sided deviation of nondecreasing `a` and `b` at `x`, ignoring jump
/// positions that differ only by rounding.
fn eq_dev(a: impl Fn(f64) -> f64, b: impl Fn(f64) -> f64, x: f64) -> f64 {
    let lo = x * (1.0 - JUMP_SLACK);
    (a(lo) - b(x)).max(b(lo) - a(x)).max(0.0)
}

const LEVELS: [f64; 11] = [1e-6, 1e-3, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0 - 1e-9, 1.0];

fn scaling_check(s: &PnSpace, kind: &SerstnevKind, params: &CheckParams) -> Check {
    let phi = kind.phi();
    let q = phi.quasi_inverse();
    let mut rng = Sampler::new(params.seed ^ 0x5e57);
    let lambdas = rng.nonzero_scalars(params.samples);
    let mut check = Check::new(kind.label(), params.tol.exact).with_path("exact");
    for i in 0..params.samples.max(1) {
        let p = rng.vector(&s.space);
        let lambda = lambdas[i % lambdas.len()];
        let lhs = s.nu_unchecked(&scale(&p, lambda));
        let np = s.nu_unchecked(&p);
        let rhs = |x: f64| np.eval(q.eval(phi.eval(x) / math::abs(lambda)));
        for x in thin(probe_points(&[&lhs, &np], &LOp::Sum), 64) {
            check.observe(eq_dev(|y| lhs.eval(y), rhs, x), || {
                witness(&[("p", &p), ("lambda", &[lambda]), ("x", &[x])])
            });
        }
    }
    check.finish();
    check
}

/// Sample a Šerstnev-type scaling law.
pub fn check_serstnev(s: &PnSpace, kind: &SerstnevKind, params: &CheckParams) -> Report {
    let mut report = Report::new(format!("{} condition", kind.label()));
    report.push(scaling_check(s, kind, params));
    report
}

fn equivalence(characterization: bool, scaling: bool) -> Check {
    let mut c = Check::new("equivalence", 0.0);
    c.observe(if characterization == scaling { 0.0 } else { 1.0 }, || {
        witness(&[
            ("characterization_passed", &[characterization as u8 as f64]),
            ("scaling_passed", &[scaling as u8 as f64]),
        ])
    });
    c.finish();
    c
}

/// `ν_p^ = L(ν_{λp}^, ν_{(1−λ)p}^)` with `L = φ⁻¹(φ(·) + φ(·))`, side by side
/// with the φ-Šerstnev condition on the same seed.
///
/// The report carries `N2`, the characterization, the scaling law, and an
/// `equivalence` check that passes when the two verdicts agree.
pub fn check_characterization_phi(s: &PnSpace, phi: &PhiMap, params: &CheckParams) -> Result<Report> {
    let op = LOp::from_phi(phi.clone())?;
    let mut rng = Sampler::new(params.seed);
    let mut report = Report::new(format!("phi-Serstnev characterization, phi = {phi:?}"));
    report.push(n2_check(s, &mut rng, params));
    let mut ch = Check::new("tau_ML characterization", params.tol.exact).with_path("exact");
    for (p, lambda) in sample_splits(&s.space, &mut rng, params.samples) {
        let qp = s.nu_unchecked(&p).quasi_inverse();
        let ql = s.nu_unchecked(&scale(&p, lambda)).quasi_inverse();
        let qr = s.nu_unchecked(&scale(&p, 1.0 - lambda)).quasi_inverse();
        let mut ts: Vec<f64> = LEVELS.to_vec();
        ts.push(rng.unit());
        for t in ts {
            let d = math::rel_gap(qp.eval(t), op.eval(ql.eval(t), qr.eval(t)));
            ch.observe(d, || witness(&[("p", &p), ("lambda", &[lambda]), ("t", &[t])]));
        }
    }
    ch.finish();
    let sc = scaling_check(s, &SerstnevKind::Phi(phi.clone()), params);
    let eq = equivalence(ch.passed, sc.passed);
    report.push(ch);
    report.push(sc);
    report.push(eq);
    Ok(report)
}

/// `ν_{βp} = τ_M(ν_{λp}, ν_{(1−λ)p})`, checked through `ν_{βp}^ = ν_{λp}^ + ν_{(1−λ)p}^`
/// and directly, side by side with the α-Šerstnev condition.
pub fn check_characterization_alpha(s: &PnSpace, alpha: f64, params: &CheckParams) -> Result<Report> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("alpha {alpha} must be > 0")));
    }
    let mut rng = Sampler::new(params.seed);
    let mut report = Report::new(format!("alpha-Serstnev characterization, alpha = {alpha}"));
    report.push(n2_check(s, &mut rng, params));
    let mut quasi = Check::new("beta formula (quasi-inverse sum)", params.tol.exact).with_path("exact");
    let mut direct = Check::new("beta formula (tau_M)", params.tol.exact).with_path("exact");
    let tau_m = TriangleFn::tau_m();
    for (p, lambda) in sample_splits(&s.space, &mut rng, params.samples) {
        let b = beta(lambda, alpha);
        let nb = s.nu_unchecked(&scale(&p, b));
        let nl = s.nu_unchecked(&scale(&p, lambda));
        let nr = s.nu_unchecked(&scale(&p, 1.0 - lambda));
        let (qb, ql, qr) = (nb.quasi_inverse(), nl.quasi_inverse(), nr.quasi_inverse());
        let mut ts: Vec<f64> = LEVELS.to_vec();
        ts.push(rng.unit());
        for t in ts {
            let d = math::rel_gap(qb.eval(t), LOp::Sum.eval(ql.eval(t), qr.eval(t)));
            quasi.observe(d, || witness(&[("p", &p), ("lambda", &[lambda]), ("beta", &[b]), ("t", &[t])]));
        }
        let conv = tau_m.apply(&nl, &nr);
        for x in thin(probe_points(&[&nb, &nl, &nr], &LOp::Sum), 64) {
            let d = eq_dev(|y| nb.eval(y), |y| conv.eval(y), x);
            direct.observe(d, || witness(&[("p", &p), ("lambda", &[lambda]), ("beta", &[b]), ("x", &[x])]));
        }
    }
    quasi.finish();
    direct.finish();
    let sc = scaling_check(s, &SerstnevKind::Alpha(alpha), params);
    let eq = equivalence(quasi.passed && direct.passed, sc.passed);
    report.push(quasi);
    report.push(direct);
    report.push(sc);
    report.push(eq);
    Ok(report)
}

/// For an α-Šerstnev space, `ν_p ≤ ν_{βp} = τ_M(ν_{λp}, ν_{(1−λ)p})`, so
/// `(V, ν, τ, τ_M)` is again a PN space.
pub fn check_tau_m_upgrade(s: &PnSpace, alpha: f64, params: &CheckParams) -> Result<Report> {
    let hyp = scaling_check(s, &SerstnevKind::Alpha(alpha), params);
    if !hyp.passed {
        return Err(Error::Hypothesis(format!("space is not alpha-Serstnev for alpha = {alpha} (worst deviation {})", hyp.worst)));
    }
    let mut rng = Sampler::new(params.seed);
    let mut report = Report::new(format!("tau* replaced by tau_M, alpha = {alpha}"));
    if alpha < 1.0 {
        report.note("alpha < 1 gives beta > 1, so nu_p <= nu_{beta p} is not expected");
    }
    let tau_m = TriangleFn::tau_m();
    let mut below = Check::new("nu_p <= nu_beta_p", params.tol.exact).with_path("exact");
    let mut equal = Check::new("nu_beta_p = tau_M(nu_lambda_p, nu_(1-lambda)_p)", params.tol.exact).with_path("exact");
    for (p, lambda) in sample_splits(&s.space, &mut rng, params.samples) {
        let b = beta(lambda, alpha);
        let np = s.nu_unchecked(&p);
        let nb = s.nu_unchecked(&scale(&p, b));
        let conv = tau_m.apply(&s.nu_unchecked(&scale(&p, lambda)), &s.nu_unchecked(&scale(&p, 1.0 - lambda)));
        for x in thin(probe_points(&[&np, &nb], &LOp::Sum), 64) {
            let w = || witness(&[("p", &p), ("lambda", &[lambda]), ("x", &[x])]);
            below.observe(excess(&np, &nb, x).max(0.0), w);
            equal.observe(eq_dev(|y| nb.eval(y), |y| conv.eval(y), x), w);
        }
    }
    below.finish();
    equal.finish();
    report.push(below);
    report.push(equal);
    let upgraded = s.with_triangles(s.tau.clone(), tau_m);
    for mut c in check_pn_axioms(&upgraded, params).checks {
        c.name = format!("{} of (V, nu, tau, tau_M)", c.name);
        report.push(c);
    }
    Ok(report)
}

use alloc::format;

use super::axioms::{check_pn_axioms, sample_pairs};
use super::{CheckParams, PnSpace, VectorSpace};
use crate::ddf::BaseCdf;
use crate::error::{Error, Result};
use crate::math;
use crate::report::{witness, Check, Report};
use crate::sampling::Sampler;
use crate::tnorms::make_tg;
use crate::triangle::TriangleFn;

/// Knobs for [`holder_menger_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolderOptions {
    /// Evaluation points per pair for `τ_{T_G} ≤ τ_{M,L}`.
    pub grid_points: usize,
    /// Pairs `(p, q)` for the triangle function comparison.
    pub pairs: usize,
    /// Also sample the PN axioms of `(V, ν, τ_{T_G}, τ_{T_G*})`.
    pub axioms: bool,
}

impl Default for HolderOptions {
    fn default() -> Self {
        Self { grid_points: 512, pairs: 50, axioms: true }
    }
}

fn holder_violation(alpha: f64, lambda: f64, a: f64, b: f64) -> f64 {
    let lhs = math::powf(a + b, 1.0 - alpha);
    let rhs = math::powf(lambda, alpha) * math::powf(a, 1.0 - alpha)
        + math::powf(1.0 - lambda, alpha) * math::powf(b, 1.0 - alpha);
    (lhs - rhs) / rhs.max(f64::MIN_POSITIVE)
}

/// `(a + b)^{1−α} ≤ λ^α a^{1−α} + (1 − λ)^α b^{1−α}` for sampled `α > 1`,
/// `λ ∈ [0, 1]` and `a, b > 0`. Strict at `λ ∈ {0, 1}`.
pub fn holder_scalar_check(samples: usize, seed: u64) -> Check {
    let mut rng = Sampler::new(seed);
    let lambdas = rng.lambdas(samples);
    let mut c = Check::new("scalar Holder inequality", 1e-12);
    for i in 0..samples.max(1) {
        let alpha = rng.uniform(1.0 + 1e-3, 6.0);
        let lambda = lambdas[i % lambdas.len()];
        let (a, b) = (rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-3, 1e3));
        let v = holder_violation(alpha, lambda, a, b);
        c.observe(v.max(0.0), || witness(&[("alpha", &[alpha]), ("lambda", &[lambda]), ("a", &[a]), ("b", &[b])]));
    }
    c.finish();
    c
}

/// The Menger structure under `T_G` of an α-simple space, `α > 1`.
///
/// Checks the scalar inequality at this `α`, the closed form of
/// `τ_{M,L}(ν_p, ν_q)`, `τ_{T_G}(ν_p, ν_q) ≤ τ_{M,L}(ν_p, ν_q)` on a dense
/// grid, and optionally the PN axioms of `(V, ν, τ_{T_G}, τ_{T_G*})`.
pub fn holder_menger_check(
    space: &VectorSpace,
    base: BaseCdf,
    alpha: f64,
    params: &CheckParams,
    opts: &HolderOptions,
) -> Result<Report> {
    if !(alpha.is_finite() && alpha > 1.0) {
        return Err(Error::InvalidArgument(format!("alpha {alpha} must be > 1")));
    }
    let tg = make_tg(base.clone(), alpha)?;
    let s = PnSpace::alpha_simple(space.clone(), base.clone(), alpha)?;
    let tau_ml = s.tau.clone();
    let tau_tg = TriangleFn::TauT(tg.clone());
    let mut rng = Sampler::new(params.seed);
    let mut report = Report::new(format!("Menger structure under T_G, alpha = {alpha}"));

    let mut scalar = Check::new("scalar Holder inequality at alpha", 1e-12);
    let lambdas = rng.lambdas(params.samples);
    for lambda in lambdas {
        let (a, b) = (rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-3, 1e3));
        let v = holder_violation(alpha, lambda, a, b);
        scalar.observe(v.max(0.0), || witness(&[("lambda", &[lambda]), ("a", &[a]), ("b", &[b])]));
    }
    scalar.finish();
    report.push(scalar);

    let mut closed = Check::new("tau_ML closed form", params.tol.exact).with_path("exact");
    let mut below = Check::new("tau_TG <= tau_ML", params.tol.grid).with_path("grid");
    let n = opts.grid_points.max(1);
    for (p, q) in sample_pairs(space, &mut rng, opts.pairs) {
        let (np, nq) = (s.nu_unchecked(&p), s.nu_unchecked(&q));
        let c = math::powf(space.norm(&p) + space.norm(&q), alpha);
        let ml = tau_ml.apply(&np, &nq);
        let want = |x: f64| base.eval(x / c);
        let t = tau_tg.apply(&np, &nq);
        for k in 1..=n {
            let x = c * base.quantile(k as f64 / (n + 1) as f64);
            let w = || witness(&[("p", &p), ("q", &q), ("x", &[x])]);
            closed.observe(math::abs(ml.eval(x) - want(x)), w);
            below.observe((t.eval(x) - ml.eval(x)).max(0.0), w);
        }
    }
    closed.finish();
    below.finish();
    report.push(closed);
    report.push(below);

    if opts.axioms {
        let menger = s.with_triangles(tau_tg, TriangleFn::TauTStar(tg.dual()));
        for mut c in check_pn_axioms(&menger, params).checks {
            c.name = format!("{} of (V, nu, tau_TG, tau_TG*)", c.name);
            report.push(c);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::NormKind;

    #[test]
    fn scalar_example() {
        // α = 2, λ = 0.3, a = 1, b = 2: 1/3 ≤ 0.09 + 0.49/2
        let v = holder_violation(2.0, 0.3, 1.0, 2.0);
        assert!(v < 0.0);
        let lhs = 1.0 / 3.0;
        let rhs = 0.09 + 0.245;
        assert!((lhs - rhs - v * rhs).abs() < 1e-15);
        assert!(holder_scalar_check(500, 1).passed);
    }

    #[test]
    fn degenerate_weights_are_strict() {
        for lambda in [0.0, 1.0] {
            assert!(holder_violation(3.0, lambda, 0.5, 2.0) < 0.0);
        }
    }

    #[test]
    fn rejects_small_alpha() {
        let v = VectorSpace::new(1, NormKind::L2).unwrap();
        let p = CheckParams::new(2, 0);
        assert!(holder_menger_check(&v, BaseCdf::Exponential, 1.0, &p, &HolderOptions::default()).is_err());
        assert!(holder_menger_check(&v, BaseCdf::Exponential, 0.5, &p, &HolderOptions::default()).is_err());
    }

    #[test]
    fn small_instance_passes() {
        let v = VectorSpace::new(2, NormKind::L2).unwrap();
        let opts = HolderOptions { grid_points: 32, pairs: 4, axioms: true };
        let r = holder_menger_check(&v, BaseCdf::Exponential, 2.0, &CheckParams::new(4, 7), &opts).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
    }
}

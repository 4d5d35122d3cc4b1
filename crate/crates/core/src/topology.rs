//! Strong neighbourhoods, the semi-metric `δ`, the probabilistic radius and
//! the two notions of boundedness.
//!
//! Closed forms are available when `ν_p` only depends on `‖p‖` and decreases
//! pointwise as `‖p‖` grows. Then the worst point of a set is its largest
//! norm, or the limit `‖p‖ → ∞` along an unbounded set.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::ddf::{distance_to_eps0, Ddf};
use crate::error::{invalid, Error, Result};
use crate::math;
use crate::phi::PhiMap;
use crate::report::{witness, Check, Report};
use crate::sampling::{scale, sub, Sampler};
use crate::spaces::{check_serstnev, CheckParams, FNorm, PnSpace, ProbNorm, SerstnevKind, VectorSpace};

/// A subset `A ⊆ V`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields))]
pub enum SetSpec {
    Finite { points: Vec<Vec<f64>> },
    /// Closed ball of radius `radius` around `θ`.
    Ball { radius: f64 },
    /// `{ t·direction : 0 ≤ t ≤ max_magnitude }`, or `|t| ≤ max_magnitude` when
    /// two-sided; no bound when `max_magnitude` is `None`.
    Ray {
        direction: Vec<f64>,
        #[cfg_attr(feature = "serde", serde(default))]
        max_magnitude: Option<f64>,
        #[cfg_attr(feature = "serde", serde(default))]
        two_sided: bool,
    },
    Singleton { point: Vec<f64> },
}

impl SetSpec {
    /// The whole line through `direction`.
    pub fn line(direction: Vec<f64>) -> Self {
        SetSpec::Ray { direction, max_magnitude: None, two_sided: true }
    }

    pub fn validate(&self, space: &VectorSpace) -> Result<()> {
        match self {
            SetSpec::Finite { points } => {
                if points.is_empty() {
                    return Err(invalid("finite set must be nonempty"));
                }
                points.iter().try_for_each(|p| space.check(p))
            }
            SetSpec::Ball { radius } => {
                if radius.is_finite() && *radius > 0.0 {
                    Ok(())
                } else {
                    Err(invalid(format!("ball radius {radius} must be finite and > 0")))
                }
            }
            SetSpec::Ray { direction, max_magnitude, .. } => {
                space.check(direction)?;
                if space.norm(direction) == 0.0 {
                    return Err(invalid("ray direction must be nonzero"));
                }
                match max_magnitude {
                    Some(m) if !(m.is_finite() && *m > 0.0) => Err(invalid(format!("ray bound {m} must be finite and > 0"))),
                    _ => Ok(()),
                }
            }
            SetSpec::Singleton { point } => space.check(point),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SetSpec::Finite { .. } | SetSpec::Singleton { .. })
    }

    /// `sup { ‖p‖ : p ∈ A }`; always attained when finite.
    pub fn sup_norm(&self, space: &VectorSpace) -> f64 {
        match self {
            SetSpec::Finite { points } => points.iter().map(|p| space.norm(p)).fold(0.0, f64::max),
            SetSpec::Ball { radius } => *radius,
            SetSpec::Ray { direction, max_magnitude, .. } => match max_magnitude {
                Some(m) => m * space.norm(direction),
                None => f64::INFINITY,
            },
            SetSpec::Singleton { point } => space.norm(point),
        }
    }

    /// `kA`.
    pub fn scaled(&self, k: f64) -> SetSpec {
        match self {
            SetSpec::Finite { points } => SetSpec::Finite { points: points.iter().map(|p| scale(p, k)).collect() },
            SetSpec::Ball { radius } => SetSpec::Ball { radius: radius * math::abs(k) },
            SetSpec::Ray { direction, max_magnitude, two_sided } => SetSpec::Ray {
                direction: direction.clone(),
                max_magnitude: max_magnitude.map(|m| m * math::abs(k)),
                two_sided: *two_sided || k < 0.0,
            },
            SetSpec::Singleton { point } => SetSpec::Singleton { point: scale(point, k) },
        }
    }

    /// Points of `A`: all of them for finite sets, otherwise `n` draws that
    /// include the extreme points.
    pub fn sample(&self, space: &VectorSpace, rng: &mut Sampler, n: usize) -> Vec<Vec<f64>> {
        match self {
            SetSpec::Finite { points } => points.clone(),
            SetSpec::Singleton { point } => vec![point.clone()],
            SetSpec::Ball { radius } => {
                let mut out = vec![space.zero()];
                for i in 0..n.max(1) {
                    let d = rng.direction(space.dim);
                    let dn = space.norm(&d);
                    let t = if i % 2 == 0 { *radius } else { radius * rng.unit() };
                    out.push(scale(&d, t / dn));
                }
                out
            }
            SetSpec::Ray { direction, max_magnitude, two_sided } => {
                let mut out = vec![space.zero()];
                for _ in 0..n.max(1) {
                    let mut t = match max_magnitude {
                        Some(m) => m * rng.unit(),
                        None => rng.log_uniform(1e-3, 1e9),
                    };
                    if *two_sided && rng.unit() < 0.5 {
                        t = -t;
                    }
                    out.push(scale(direction, t));
                }
                if let Some(m) = max_magnitude {
                    out.push(scale(direction, *m));
                }
                out
            }
        }
    }
}

/// `q ∈ N_p(t)`, that is `ν_{p−q}(t) > 1 − t`.
pub fn neighborhood_contains(s: &PnSpace, p: &[f64], t: f64, q: &[f64]) -> Result<bool> {
    if t.is_nan() || t <= 0.0 {
        return Err(invalid(format!("neighbourhood radius {t} must be > 0")));
    }
    s.space.check(p)?;
    s.space.check(q)?;
    Ok(s.nu_unchecked(&sub(p, q)).eval(t) > 1.0 - t)
}

/// `δ(p, q) = d_S(ν_{p−q}, ε_0)`.
pub fn delta(s: &PnSpace, p: &[f64], q: &[f64]) -> Result<f64> {
    s.space.check(p)?;
    s.space.check(q)?;
    Ok(distance_to_eps0(&s.nu_unchecked(&sub(p, q))))
}

/// `ν_p` for `‖p‖ = n`, when the norm is radial.
fn radial_nu(norm: &ProbNorm, n: f64) -> Option<Ddf> {
    if n == 0.0 && !matches!(norm, ProbNorm::EpsOfG(_)) {
        return Some(Ddf::eps0());
    }
    match norm {
        ProbNorm::Simple(g) => Some(Ddf::Scaled { base: g.clone(), scale: n }),
        ProbNorm::AlphaSimple { base, alpha } => Some(Ddf::Scaled { base: base.clone(), scale: math::powf(n, *alpha) }),
        ProbNorm::EpsOfG(g) => Some(Ddf::Step(g.of_norm(n)?.max(0.0))),
        ProbNorm::Transformed { base, phi } => Some(radial_nu(base, n)?.compose(phi)),
    }
}

fn is_radial(norm: &ProbNorm) -> bool {
    match norm {
        ProbNorm::EpsOfG(FNorm::Custom(_)) => false,
        ProbNorm::Transformed { base, .. } => is_radial(base),
        _ => true,
    }
}

/// `inf_{‖p‖ < ∞} ν_p(x)`, the limit as `‖p‖ → ∞`.
fn large_limit(norm: &ProbNorm, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    match norm {
        ProbNorm::Simple(g) | ProbNorm::AlphaSimple { base: g, .. } => g.eval_right(0.0),
        ProbNorm::EpsOfG(g) => {
            let s = g.of_norm(f64::INFINITY).unwrap_or(f64::INFINITY);
            if x >= s {
                1.0
            } else {
                0.0
            }
        }
        ProbNorm::Transformed { base, phi } => large_limit(base, phi.eval(x)),
    }
}

/// `sup_{p ≠ θ} ν_p(x)`, the limit as `‖p‖ → 0`.
fn small_limit(norm: &ProbNorm, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    match norm {
        ProbNorm::Simple(g) | ProbNorm::AlphaSimple { base: g, .. } => g.tail(),
        ProbNorm::EpsOfG(_) => 1.0,
        ProbNorm::Transformed { base, phi } => small_limit(base, phi.eval(x)),
    }
}

/// Left regularization of the constant `c` on `(0, ∞)`.
fn constant_ddf(c: f64) -> Ddf {
    if c <= 0.0 {
        Ddf::Step(f64::INFINITY)
    } else if c >= 1.0 {
        Ddf::eps0()
    } else {
        Ddf::knots(vec![(0.0, 0.0), (0.0, c)]).expect("valid constant")
    }
}

/// `l⁻ lim_{‖p‖→∞} ν_p`.
fn large_limit_ddf(norm: &ProbNorm) -> Ddf {
    match norm {
        ProbNorm::Simple(g) | ProbNorm::AlphaSimple { base: g, .. } => constant_ddf(g.eval_right(0.0)),
        ProbNorm::EpsOfG(g) => Ddf::Step(g.of_norm(f64::INFINITY).unwrap_or(f64::INFINITY)),
        ProbNorm::Transformed { base, phi } => large_limit_ddf(base).compose(phi),
    }
}

/// The probabilistic radius of a set.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RadiusResult {
    #[cfg_attr(feature = "serde", serde(skip))]
    pub radius: Ddf,
    pub in_dplus: bool,
    /// `lim_{x→∞} R_A(x)`.
    pub tail: f64,
    /// `(x, R_A(x))` at a few large `x`.
    pub tail_probe: Vec<(f64, f64)>,
    pub note: String,
}

/// `R_A = l⁻ inf { ν_p : p ∈ A }`.
pub fn probabilistic_radius(s: &PnSpace, a: &SetSpec) -> Result<RadiusResult> {
    a.validate(&s.space)?;
    let (radius, note) = match a {
        SetSpec::Finite { points } => (
            Ddf::min_of(points.iter().map(|p| s.nu_unchecked(p)).collect())?,
            String::from("pointwise minimum of left-continuous functions; l- is the identity"),
        ),
        SetSpec::Singleton { point } => (s.nu_unchecked(point), String::from("single point")),
        _ if !is_radial(&s.norm) => {
            return Err(Error::NoClosedForm(format!("{:?} over {:?}", s.norm, a)));
        }
        _ => {
            let m = a.sup_norm(&s.space);
            if m.is_finite() {
                (radial_nu(&s.norm, m).expect("radial"), format!("worst point has norm {m}"))
            } else {
                (large_limit_ddf(&s.norm), String::from("limit along the unbounded set"))
            }
        }
    };
    let tail = radius.tail();
    let tail_probe = [1e3, 1e6, 1e12].iter().map(|&x| (x, radius.eval(x))).collect();
    Ok(RadiusResult { in_dplus: radius.is_in_dplus(), tail, tail_probe, radius, note })
}

/// `A` is D-bounded iff `R_A ∈ D⁺`.
pub fn is_d_bounded(s: &PnSpace, a: &SetSpec) -> Result<(bool, RadiusResult)> {
    let r = probabilistic_radius(s, a)?;
    Ok((r.in_dplus, r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    Bounded,
    NotBounded,
    Inconclusive,
}

/// Outcome of the boundedness classifier.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Boundedness {
    pub verdict: Verdict,
    /// "For every `n` there is `k` with `A ⊆ k N_θ(1/n)`", or `None` when
    /// the search ran out of `k` without a disproof.
    pub criterion_a: Option<bool>,
    /// `(n, k)`: the least `k ≤ max_k` that works for `n`, if any.
    pub table: Vec<(u32, Option<u32>)>,
    pub certificate: Option<String>,
    pub notes: Vec<String>,
}

/// `min_{p∈A} ν_{p/k}(x)` and whether the minimum is attained, or `None`
/// without a closed form.
fn worst_scaled(s: &PnSpace, a: &SetSpec, k: f64, x: f64) -> Option<(f64, bool)> {
    match a {
        SetSpec::Finite { points } => {
            Some((points.iter().map(|p| s.nu_unchecked(&scale(p, 1.0 / k)).eval(x)).fold(1.0, f64::min), true))
        }
        SetSpec::Singleton { point } => Some((s.nu_unchecked(&scale(point, 1.0 / k)).eval(x), true)),
        _ if !is_radial(&s.norm) => None,
        _ => {
            let m = a.sup_norm(&s.space);
            if m.is_finite() {
                Some((radial_nu(&s.norm, m / k)?.eval(x), true))
            } else {
                Some((large_limit(&s.norm, x), false))
            }
        }
    }
}

/// Does no `k` at all work for this `n`? Radial closed forms only.
fn no_k_works(s: &PnSpace, a: &SetSpec, x: f64, c: f64) -> Option<&'static str> {
    if !is_radial(&s.norm) {
        return None;
    }
    if a.sup_norm(&s.space).is_infinite() {
        // k A = A for an unbounded ray, so the value does not depend on k
        return Some("cone: A/k = A");
    }
    let all_zero = match a {
        SetSpec::Finite { points } => points.iter().all(|p| s.space.norm(p) == 0.0),
        SetSpec::Singleton { point } => s.space.norm(point) == 0.0,
        _ => false,
    };
    if !all_zero && small_limit(&s.norm, x) <= c {
        return Some("sup over p != 0 of nu_p(1/n) is at most 1 - 1/n");
    }
    None
}

/// `ν_q(t) ≤ 1 − t` for every `q ≠ θ` at some `t`: then `N_θ(t) = {θ}` and the
/// strong topology is discrete.
fn discrete_at(s: &PnSpace) -> Option<f64> {
    if !is_radial(&s.norm) {
        return None;
    }
    [0.5, 0.25, 0.1, 0.01, 1e-3].into_iter().find(|&t| small_limit(&s.norm, t) <= 1.0 - t)
}

/// `λ_n p → θ` for every `p` when `λ_n → 0`: `ν_q(x) → 1` as `‖q‖ → 0`.
fn scalar_continuous(s: &PnSpace) -> Option<bool> {
    if !is_radial(&s.norm) {
        return None;
    }
    Some([1e-9, 1e-3, 0.5, 1.0, 1e3].iter().all(|&x| small_limit(&s.norm, x) >= 1.0))
}

/// Criterion (a) of the boundedness theorem, searched over `n ≤ max_n` and
/// `k ≤ max_k`, plus the cover by finitely many translates for finite sets.
///
/// Infinite sets get `NotBounded` only with a certificate: either the
/// criterion fails for every `k` in a space whose scalar multiplication is
/// continuous (so bounded sets satisfy the criterion), or the strong topology
/// is discrete.
pub fn is_bounded(s: &PnSpace, a: &SetSpec, max_n: u32, max_k: u32) -> Result<Boundedness> {
    if max_n == 0 || max_k == 0 {
        return Err(invalid("max_n and max_k must be at least 1"));
    }
    a.validate(&s.space)?;
    let mut table = Vec::new();
    let mut notes = Vec::new();
    let mut criterion_a = Some(true);
    let mut disproof = None;
    for n in 1..=max_n {
        let x = 1.0 / n as f64;
        let c = 1.0 - x;
        // `ν_{p/k}` grows with `k` for radial norms, so the least `k` can be bisected
        let works = |k: u32| worst_scaled(s, a, k as f64, x).map(|(v, attained)| v > c || (!attained && v >= c));
        let found = if is_radial(&s.norm) {
            match works(max_k) {
                Some(true) => {
                    let (mut lo, mut hi) = (0u32, max_k);
                    while hi - lo > 1 {
                        let mid = lo + (hi - lo) / 2;
                        if works(mid) == Some(true) {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                    Some(hi)
                }
                _ => None,
            }
        } else {
            let mut hit = None;
            for k in 1..=max_k {
                match works(k) {
                    None => {
                        criterion_a = None;
                        break;
                    }
                    Some(true) => {
                        hit = Some(k);
                        break;
                    }
                    Some(false) => {}
                }
            }
            hit
        };
        table.push((n, found));
        if found.is_none() {
            match no_k_works(s, a, x, c) {
                Some(why) => {
                    criterion_a = Some(false);
                    disproof = Some(format!("n = {n}: {why}"));
                    break;
                }
                None => {
                    criterion_a = None;
                    break;
                }
            }
        }
    }
    if criterion_a == Some(true) {
        notes.push(format!("criterion checked for n <= {max_n}; the closed forms are monotone in n"));
    }

    let (verdict, certificate) = if a.is_finite() {
        (Verdict::Bounded, Some(String::from("finite set: covered by its own points with k = 1")))
    } else if criterion_a == Some(true) {
        (Verdict::Bounded, Some(String::from("k N_theta(1/n) is contained in N_theta(1/n)^[k]")))
    } else if let Some(t) = discrete_at(s) {
        (Verdict::NotBounded, Some(format!("N_theta({t}) = {{theta}}: discrete topology and A is infinite")))
    } else if criterion_a == Some(false) && scalar_continuous(s) == Some(true) {
        let why = disproof.clone().unwrap_or_default();
        (Verdict::NotBounded, Some(format!("scalar multiplication is continuous and the criterion fails ({why})")))
    } else {
        (Verdict::Inconclusive, None)
    };
    if let Some(d) = disproof {
        notes.push(format!("criterion (a) fails: {d}"));
    }
    Ok(Boundedness { verdict, criterion_a, table, certificate, notes })
}

/// Criterion (a), D-boundedness and boundedness side by side.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundednessReport {
    pub report: Report,
    pub criterion_a: Option<bool>,
    pub d_bounded: bool,
    pub bounded: Boundedness,
}

impl BoundednessReport {
    /// Undecided when criterion (a) could not be settled.
    pub fn inconclusive(&self) -> bool {
        self.criterion_a.is_none()
    }
}

fn flag(b: bool) -> f64 {
    b as u8 as f64
}

/// In a φ-Šerstnev space with `φ^(x) → ∞`, criterion (a) holds iff `A` is
/// D-bounded, and both imply that `A` is bounded.
pub fn check_bounded_iff_dbounded(
    s: &PnSpace,
    phi: &PhiMap,
    a: &SetSpec,
    max_n: u32,
    max_k: u32,
    params: &CheckParams,
) -> Result<BoundednessReport> {
    let lim = phi.quasi_inverse_limit();
    if lim.is_finite() {
        return Err(Error::Hypothesis(format!("lim phi^(x) = {lim} is finite")));
    }
    let sc = check_serstnev(s, &SerstnevKind::Phi(phi.clone()), params);
    if !sc.passed() {
        let worst = sc.checks.first().map_or(0.0, |c| c.worst);
        return Err(Error::Hypothesis(format!("space is not phi-Serstnev (worst deviation {worst})")));
    }
    let (d_bounded, radius) = is_d_bounded(s, a)?;
    let bounded = is_bounded(s, a, max_n, max_k)?;
    let mut report = Report::new(format!("boundedness of {a:?}"));
    report.note(format!("R_A tail = {}", radius.tail));
    match bounded.criterion_a {
        Some(ca) => {
            let mut iff = Check::new("(a) iff (b)", 0.0);
            iff.observe(if ca == d_bounded { 0.0 } else { 1.0 }, || {
                witness(&[("criterion_a", &[flag(ca)]), ("d_bounded", &[flag(d_bounded)])])
            });
            iff.finish();
            report.push(iff);
            let mut imp = Check::new("(a) implies (c)", 0.0);
            let c = bounded.verdict == Verdict::Bounded;
            imp.observe(if !ca || c { 0.0 } else { 1.0 }, || witness(&[("criterion_a", &[1.0]), ("bounded", &[flag(c)])]));
            imp.finish();
            report.push(imp);
        }
        None => report.note("criterion (a) undecided within the search bounds"),
    }
    if bounded.verdict == Verdict::Bounded && !d_bounded {
        report.note("bounded and not D-bounded");
    }
    if bounded.verdict == Verdict::NotBounded && d_bounded {
        report.note("D-bounded and not bounded");
    }
    Ok(BoundednessReport { report, criterion_a: bounded.criterion_a, d_bounded, bounded })
}

/// Default null sequence `2^{-j}`, `j = 1..=60`.
pub fn default_null_sequence() -> Vec<f64> {
    (1..=60).map(|j| math::powf(2.0, -(j as f64))).collect()
}

/// Outcome of [`scalar_continuity_probe`].
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ContinuityProbe {
    pub report: Report,
    /// `ν_{λ_n p}(x)` ends within `1e-6` of `1` for every sample.
    pub continuous: bool,
    /// `ν_p ∈ D⁺` for every sampled `p`.
    pub in_dplus: bool,
}

const TAIL_TERMS: usize = 5;
const CONTINUITY_TOL: f64 = 1e-6;

/// Scalar continuity at the first place, sampled, next to `ν(V) ⊆ D⁺`.
/// The two must agree when the space is φ-Šerstnev.
pub fn scalar_continuity_probe(s: &PnSpace, points: &[Vec<f64>], null_sequences: &[Vec<f64>]) -> Result<ContinuityProbe> {
    for p in points {
        s.space.check(p)?;
    }
    let xs = [1e-3, 0.1, 1.0, 10.0];
    let mut cont = Check::new("nu_(lambda_n p)(x) -> 1", CONTINUITY_TOL);
    let mut dplus = Check::new("nu_p in D+", 0.0).with_path("exact");
    for p in points {
        let np = s.nu_unchecked(p);
        dplus.observe(1.0 - np.tail(), || witness(&[("p", p)]));
        for seq in null_sequences {
            let tail = &seq[seq.len().saturating_sub(TAIL_TERMS)..];
            for &x in &xs {
                for &l in tail {
                    let v = s.nu_unchecked(&scale(p, l)).eval(x);
                    cont.observe(1.0 - v, || witness(&[("p", p), ("lambda", &[l]), ("x", &[x])]));
                }
            }
        }
    }
    // verdicts, not pass/fail: record them and keep the checks passing
    let continuous = cont.worst <= CONTINUITY_TOL;
    let in_dplus = dplus.worst == 0.0;
    let mut report = Report::new("scalar continuity at the first place");
    report.note(format!("continuity verdict: {continuous}, worst 1 - nu = {}", cont.worst));
    report.note(format!("nu(V) in D+ verdict: {in_dplus}"));
    if s.norm.serstnev_phi().is_some() {
        let mut agree = Check::new("continuity iff nu(V) in D+", 0.0);
        agree.observe(if continuous == in_dplus { 0.0 } else { 1.0 }, || {
            witness(&[("continuous", &[flag(continuous)]), ("in_dplus", &[flag(in_dplus)])])
        });
        agree.finish();
        report.push(agree);
    } else {
        report.note("space is not phi-Serstnev in closed form; agreement not asserted");
    }
    Ok(ContinuityProbe { report, continuous, in_dplus })
}

/// `sup g(A)`, exact for radial `g` and finite sets.
fn sup_g(space: &VectorSpace, g: &FNorm, a: &SetSpec) -> Option<f64> {
    match a {
        SetSpec::Finite { points } => Some(points.iter().map(|p| g.eval(space, p)).fold(0.0, f64::max)),
        SetSpec::Singleton { point } => Some(g.eval(space, point)),
        _ => g.of_norm(a.sup_norm(space)),
    }
}

/// The three facts on D-bounded sets of an F-normed space `(V, ε_g, τ_M, M)`:
/// D-bounded iff `g(A)` is bounded, `kA` stays D-bounded, and bounded sets are
/// D-bounded.
pub fn fnormed_dbounded_props(space: &VectorSpace, g: &FNorm, a: &SetSpec, ks: &[f64]) -> Result<Report> {
    let s = PnSpace::eps_of_g(space.clone(), g.clone());
    let sup = sup_g(space, g, a).ok_or_else(|| Error::NoClosedForm(format!("sup of {g:?} over {a:?}")))?;
    let (db, _) = is_d_bounded(&s, a)?;
    let mut report = Report::new(format!("D-bounded sets for g = {g:?}, A = {a:?}"));
    report.note(format!("sup g(A) = {sup}"));

    let mut c1 = Check::new("D-bounded iff g(A) bounded", 0.0);
    c1.observe(if db == sup.is_finite() { 0.0 } else { 1.0 }, || {
        witness(&[("d_bounded", &[flag(db)]), ("sup_g", &[sup])])
    });
    c1.finish();
    report.push(c1);

    let mut c2 = Check::new("D-bounded A implies D-bounded kA", 0.0);
    for &k in ks {
        if !(k.is_finite() && k > 0.0) {
            return Err(invalid(format!("scale factor {k} must be > 0")));
        }
        let (dk, _) = is_d_bounded(&s, &a.scaled(k))?;
        c2.observe(if !db || dk { 0.0 } else { 1.0 }, || witness(&[("k", &[k])]));
    }
    c2.finish();
    report.push(c2);

    let b = is_bounded(&s, a, 64, 1 << 20)?;
    let mut c3 = Check::new("bounded implies D-bounded", 0.0);
    let bounded = b.verdict == Verdict::Bounded;
    c3.observe(if !bounded || db { 0.0 } else { 1.0 }, || witness(&[("bounded", &[1.0]), ("d_bounded", &[flag(db)])]));
    c3.finish();
    report.push(c3);
    if b.verdict == Verdict::Inconclusive {
        report.note("boundedness undecided; the last implication is vacuous");
    }
    Ok(report)
}

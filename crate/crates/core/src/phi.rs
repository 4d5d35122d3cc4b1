//! Monotone transforms `φ : [0, ∞] → [0, ∞]` and φ-transforms.
//!
//! A [`PhiMap`] is nondecreasing and left-continuous with `φ(0) = 0` and
//! `φ(∞) = ∞`. The class `M̃` additionally asks `φ(x) > 0` for `x > 0`; the
//! bijective members form `M_∞`. Quasi-inverses are returned as `PhiMap`s as
//! well, even when they fall outside `M̃` (for instance `y ↦ min(y, b)`).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::ddf::Ddf;
use crate::error::{Error, Result};
use crate::knots::MonotoneKnots;
use crate::math;
use crate::report::{Check, Report, Witness};
use crate::sampling::Sampler;
use crate::spaces::PnSpace;

#[derive(Clone, Debug, PartialEq)]
pub enum PhiMap {
    /// `x ↦ x^{1/α}`.
    Power(f64),
    /// `x ↦ kx`.
    Linear(f64),
    /// `x ↦ x` on `[0, b]` and `∞` beyond `b`.
    Capped(f64),
    /// Piecewise linear; see [`MonotoneKnots`].
    Custom(MonotoneKnots),
}

impl PhiMap {
    pub fn identity() -> Self {
        PhiMap::Linear(1.0)
    }

    pub fn power(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(crate::error::invalid(format!("power exponent {alpha} must be > 0")));
        }
        Ok(PhiMap::Power(alpha))
    }

    pub fn linear(k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(crate::error::invalid(format!("linear factor {k} must be > 0")));
        }
        Ok(PhiMap::Linear(k))
    }

    pub fn capped(b: f64) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(crate::error::invalid(format!("cap {b} must be finite and > 0")));
        }
        Ok(PhiMap::Capped(b))
    }

    pub fn custom(points: Vec<(f64, f64)>, tail_slope: f64) -> Result<Self> {
        Ok(PhiMap::Custom(MonotoneKnots::new(points, tail_slope)?))
    }

    fn as_knots(&self) -> Option<MonotoneKnots> {
        match self {
            PhiMap::Capped(b) => Some(
                MonotoneKnots::new(vec![(0.0, 0.0), (*b, *b)], f64::INFINITY)
                    .expect("cap is validated at construction"),
            ),
            PhiMap::Custom(k) => Some(k.clone()),
            _ => None,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x.is_infinite() {
            return f64::INFINITY;
        }
        if x <= 0.0 {
            return 0.0;
        }
        match self {
            PhiMap::Power(alpha) => math::powf(x, 1.0 / alpha),
            PhiMap::Linear(k) => k * x,
            PhiMap::Capped(b) => {
                if x <= *b {
                    x
                } else {
                    f64::INFINITY
                }
            }
            PhiMap::Custom(k) => k.eval(x),
        }
    }

    /// The left-continuous quasi-inverse `φ^(t) = sup { u : φ(u) < t }`,
    /// with `φ^(0) = 0` and `φ^(∞) = ∞`.
    pub fn quasi_inverse(&self) -> PhiMap {
        match self {
            PhiMap::Power(alpha) => PhiMap::Power(1.0 / alpha),
            PhiMap::Linear(k) => PhiMap::Linear(1.0 / k),
            other => PhiMap::Custom(other.as_knots().expect("knot-backed variant").swap()),
        }
    }

    /// The inverse of a bijective map.
    pub fn inverse(&self) -> Result<PhiMap> {
        if !self.in_minf() {
            return Err(Error::NotInClass(format!("{self:?} is not bijective (not in M_inf)")));
        }
        Ok(self.quasi_inverse())
    }

    /// `sup { x : φ(x) ≤ a }`, the point where `φ` first exceeds `a`.
    pub fn threshold(&self, a: f64) -> f64 {
        if a.is_infinite() {
            return f64::INFINITY;
        }
        match self {
            PhiMap::Power(alpha) => math::powf(a, *alpha),
            PhiMap::Linear(k) => a / k,
            other => other.as_knots().expect("knot-backed variant").swap().eval_right(a),
        }
    }

    /// Member of `M̃`: `φ(x) > 0` for every `x > 0`.
    pub fn in_mtilde(&self) -> bool {
        self.positive_after_zero()
    }

    /// `φ(x) > 0` for every `x > 0`.
    pub fn positive_after_zero(&self) -> bool {
        match self {
            PhiMap::Power(_) | PhiMap::Linear(_) | PhiMap::Capped(_) => true,
            PhiMap::Custom(k) => {
                if k.eval_right(0.0) > 0.0 {
                    return true;
                }
                match k.points().iter().find(|p| p.0 > 0.0) {
                    Some(&(_, y)) => y > 0.0,
                    None => k.tail_slope() > 0.0,
                }
            }
        }
    }

    /// Member of `M_∞`: continuous, strictly increasing and onto `[0, ∞]`.
    pub fn in_minf(&self) -> bool {
        match self {
            PhiMap::Power(_) | PhiMap::Linear(_) => true,
            PhiMap::Capped(_) => false,
            PhiMap::Custom(k) => k.is_strictly_increasing(),
        }
    }

    /// `Some(b)` when `φ` is continuous and strictly increasing on `[0, b]` and
    /// equal to `∞` past `b`, the embedding of `M_b` into `M̃`.
    pub fn mb_threshold(&self) -> Option<f64> {
        match self {
            PhiMap::Capped(b) => Some(*b),
            PhiMap::Custom(k) if k.tail_slope().is_infinite() => {
                let inner = k.points().windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1);
                inner.then(|| k.last().0)
            }
            _ => None,
        }
    }

    /// Supremum of `φ` over finite arguments, and whether it is attained.
    pub fn sup_finite(&self) -> (f64, bool) {
        match self {
            PhiMap::Power(_) | PhiMap::Linear(_) => (f64::INFINITY, false),
            PhiMap::Capped(_) => (f64::INFINITY, true),
            PhiMap::Custom(k) => {
                let s = k.tail_slope();
                if s == 0.0 {
                    (k.last().1, true)
                } else {
                    (f64::INFINITY, s.is_infinite())
                }
            }
        }
    }

    /// `lim_{y→∞} φ^(y)`.
    pub fn quasi_inverse_limit(&self) -> f64 {
        self.quasi_inverse().sup_finite().0
    }

    /// Knot abscissae where the map may bend or jump.
    pub fn kinks(&self) -> Vec<f64> {
        self.as_knots().map(|k| k.xs()).unwrap_or_default()
    }

    /// The composite `x ↦ self(other(x))` when it stays in closed form.
    pub fn then_after(&self, other: &PhiMap) -> Option<PhiMap> {
        match (self, other) {
            (PhiMap::Linear(a), PhiMap::Linear(b)) => Some(PhiMap::Linear(a * b)),
            (PhiMap::Power(a), PhiMap::Power(b)) => Some(PhiMap::Power(a * b)),
            (PhiMap::Linear(k), p) | (p, PhiMap::Linear(k)) if *k == 1.0 => Some(p.clone()),
            _ => None,
        }
    }
}

/// `x ↦ F(φ(x))`.
pub fn transform_ddf(f: &Ddf, phi: &PhiMap) -> Result<Ddf> {
    if !phi.in_mtilde() {
        return Err(Error::NotInClass(format!("{phi:?} is not in M~")));
    }
    Ok(f.compose(phi))
}

/// The φ-transform `(V, νφ, τ^φ, (τ*)^φ)`.
pub fn transform_space(space: &PnSpace, phi: &PhiMap) -> Result<PnSpace> {
    if !phi.in_mtilde() {
        return Err(Error::NotInClass(format!("{phi:?} is not in M~")));
    }
    Ok(PnSpace {
        space: space.space.clone(),
        norm: space.norm.transformed(phi.clone()),
        tau: space.tau.phi_transform(phi.clone()),
        tau_star: space.tau_star.phi_transform(phi.clone()),
    })
}

/// Outcome of [`topology_refinement_probe`].
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RefinementProbe {
    /// `(m, n)`: `N_θ(1/n)` of the original space lies in `N'_θ(1/m)`.
    pub forward: Vec<(u32, u32)>,
    pub forward_ok: bool,
    /// `(m, n)`: `N'_θ(1/n)` lies in `N_θ(1/m)`; only when `φ^(y) > 0` for `y > 0`.
    pub reverse: Option<Vec<(u32, u32)>>,
    pub reverse_ok: Option<bool>,
    pub report: Report,
}

/// Test the neighbourhood inclusions between a space and its φ-transform.
///
/// The original space's topology is finer: for each `m` there is `n ≥ m` with
/// `φ(1/m) > 1/n`, and then `N_θ(1/n) ⊆ N'_θ(1/m)`. When `φ^` is positive on
/// `(0, ∞)` the reverse inclusion is probed as well. Both are checked on
/// sampled vectors only, so a pass means "not falsified".
pub fn topology_refinement_probe(
    space: &PnSpace,
    phi: &PhiMap,
    samples: usize,
    seed: u64,
    mesh: u32,
) -> Result<RefinementProbe> {
    let transformed = transform_space(space, phi)?;
    let mut rng = Sampler::new(seed);
    let points: Vec<Vec<f64>> =
        (0..samples.max(1)).map(|_| rng.vector_with_magnitude(space.space.dim, 1e-6, 1e3)).collect();
    let nus: Vec<Ddf> = points.iter().map(|p| space.nu(p)).collect::<Result<_>>()?;
    let nus_t: Vec<Ddf> = points.iter().map(|p| transformed.nu(p)).collect::<Result<_>>()?;
    let in_nbhd = |f: &Ddf, n: u32| f.eval(1.0 / n as f64) > 1.0 - 1.0 / n as f64;

    let mut report = Report::new("topology refinement probe");
    let mut forward = Vec::new();
    let mut fwd = Check::new("forward inclusion N(1/n) in N'(1/m)", 0.0);
    for m in 1..=mesh {
        let target = phi.eval(1.0 / m as f64);
        let n = if target.is_infinite() { m } else { m.max(math::ceil(1.0 / target) as u32) };
        forward.push((m, n));
        for (i, (f, ft)) in nus.iter().zip(&nus_t).enumerate() {
            if in_nbhd(f, n) && !in_nbhd(ft, m) {
                let mut w = Witness::new();
                w.insert("m".into(), vec![m as f64]);
                w.insert("n".into(), vec![n as f64]);
                w.insert("q".into(), points[i].clone());
                fwd.record(1.0, w);
            }
        }
    }
    fwd.samples = nus.len() * mesh as usize;
    let forward_ok = fwd.finish();
    report.push(fwd);

    let positive = phi.quasi_inverse().positive_after_zero();
    let (reverse, reverse_ok) = if positive {
        let q = phi.quasi_inverse();
        let mut rev = Check::new("reverse inclusion N'(1/n) in N(1/m)", 0.0);
        let mut table = Vec::new();
        for m in 1..=mesh {
            let bound = q.eval(1.0 / m as f64);
            let n = if bound.is_infinite() { m } else { m.max(math::ceil(1.0 / bound) as u32) };
            table.push((m, n));
            for (i, (f, ft)) in nus.iter().zip(&nus_t).enumerate() {
                if in_nbhd(ft, n) && !in_nbhd(f, m) {
                    let mut w = Witness::new();
                    w.insert("m".into(), vec![m as f64]);
                    w.insert("n".into(), vec![n as f64]);
                    w.insert("q".into(), points[i].clone());
                    rev.record(1.0, w);
                }
            }
        }
        rev.samples = nus.len() * mesh as usize;
        let ok = rev.finish();
        report.push(rev);
        report.note("coincidence of the two topologies is not falsified on the sampled vectors");
        (Some(table), Some(ok))
    } else {
        report.note("quasi-inverse vanishes near 0: reverse inclusion not applicable");
        (None, None)
    };
    Ok(RefinementProbe { forward, forward_ok, reverse, reverse_ok, report })
}

impl PhiMap {
    /// Right limit of the map at `x`.
    pub fn eval_right(&self, x: f64) -> f64 {
        match self {
            PhiMap::Power(_) | PhiMap::Linear(_) => self.eval(x),
            PhiMap::Capped(b) if x >= *b => f64::INFINITY,
            PhiMap::Capped(_) => x,
            PhiMap::Custom(k) => k.eval_right(x),
        }
    }
}

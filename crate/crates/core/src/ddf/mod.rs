//! Distance distribution functions.
//!
//! A d.d.f. `F` is nondecreasing and left-continuous on `[0, ∞)`, takes values
//! in `[0, 1]` and has `F(0) = 0`. By the usual convention `F(∞) = 1`; the
//! limit `lim_{x→∞} F(x)` is reported separately by [`Ddf::tail`] and decides
//! membership in `D⁺`.
//!
//! Closed forms (`Step`, `Scaled`) stay symbolic so that identities between
//! them hold to rounding error. Results of convolutions that have no closed
//! form are kept lazy and evaluated pointwise on demand.

mod quasi;
mod sibley;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::knots::MonotoneKnots;
use crate::math;
use crate::phi::PhiMap;
use crate::triangle::Convolution;

pub use quasi::QuasiInverse;
pub use sibley::{distance_to_eps0, sibley_distance, SIBLEY_DEPTH};

/// Building blocks `G` for simple and α-simple spaces.
#[derive(Clone, Debug, PartialEq)]
pub enum BaseCdf {
    /// `x ↦ 1 − e^{−x}`.
    Exponential,
    /// `x ↦ min(x, 1)`.
    UniformUnit,
    /// `x ↦ (1 − e^{−x}) / 2`, which never gets above `1/2`.
    HalfExponential,
    /// Tabulated, flat after the last knot.
    Custom(MonotoneKnots),
}

impl BaseCdf {
    /// Piecewise-linear base from `(x, value)` knots starting at `(0, 0)`.
    pub fn custom(points: Vec<(f64, f64)>) -> Result<Self> {
        let k = MonotoneKnots::new(points, 0.0)?;
        if k.last().1 > 1.0 {
            return Err(invalid("distribution values must stay in [0, 1]"));
        }
        if k.last().1 <= 0.0 {
            return Err(invalid("base distribution must not be identically 0"));
        }
        if k.eval_right(0.0) >= 1.0 {
            return Err(invalid("base distribution must differ from eps_0"));
        }
        Ok(BaseCdf::Custom(k))
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x.is_infinite() {
            return 1.0;
        }
        match self {
            BaseCdf::Exponential => -math::exp_m1(-x),
            BaseCdf::UniformUnit => x.min(1.0),
            BaseCdf::HalfExponential => -math::exp_m1(-x) / 2.0,
            BaseCdf::Custom(k) => k.eval(x),
        }
    }

    pub fn eval_right(&self, x: f64) -> f64 {
        match self {
            BaseCdf::Custom(k) => k.eval_right(x),
            _ => self.eval(x),
        }
    }

    /// `lim_{x→∞} G(x)`.
    pub fn tail(&self) -> f64 {
        match self {
            BaseCdf::Exponential | BaseCdf::UniformUnit => 1.0,
            BaseCdf::HalfExponential => 0.5,
            BaseCdf::Custom(k) => k.last().1,
        }
    }

    /// Whether the tail value is reached at a finite point.
    pub fn attains_tail(&self) -> bool {
        matches!(self, BaseCdf::UniformUnit | BaseCdf::Custom(_))
    }

    /// `sup { u : G(u) < t }`.
    pub fn quantile(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match self {
            BaseCdf::Exponential => {
                if t >= 1.0 {
                    f64::INFINITY
                } else {
                    -math::ln_1p(-t)
                }
            }
            BaseCdf::UniformUnit => {
                if t > 1.0 {
                    f64::INFINITY
                } else {
                    t
                }
            }
            BaseCdf::HalfExponential => {
                if t >= 0.5 {
                    f64::INFINITY
                } else {
                    -math::ln_1p(-2.0 * t)
                }
            }
            BaseCdf::Custom(k) => k.swap().eval(t),
        }
    }

    /// Continuous and strictly increasing on all of `[0, ∞)`.
    pub fn is_strictly_increasing(&self) -> bool {
        matches!(self, BaseCdf::Exponential | BaseCdf::HalfExponential)
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            BaseCdf::UniformUnit => vec![1.0],
            BaseCdf::Custom(k) => k.xs().into_iter().filter(|&x| x > 0.0).collect(),
            _ => Vec::new(),
        }
    }
}

/// A distance distribution function.
#[derive(Clone, Debug)]
pub enum Ddf {
    /// `ε_a`: 0 on `[0, a]`, 1 beyond. `a` may be `∞`.
    Step(f64),
    /// `x ↦ G(x / scale)`.
    Scaled { base: BaseCdf, scale: f64 },
    /// Tabulated; values in `[0, 1]`, flat after the last knot.
    Knots(MonotoneKnots),
    /// `x ↦ F(φ(x))`.
    Composed { inner: Arc<Ddf>, map: PhiMap },
    /// The d.d.f. whose quasi-inverse is given.
    FromQuasiInverse(Arc<QuasiInverse>),
    /// Lazily evaluated sup/inf convolution.
    Convolution(Arc<Convolution>),
    /// Pointwise minimum.
    PointwiseMin(Arc<[Ddf]>),
}

/// `ε_a`.
pub fn make_eps(a: f64) -> Result<Ddf> {
    Ddf::eps(a)
}

impl Ddf {
    pub fn eps(a: f64) -> Result<Ddf> {
        if !math::is_ext_nonneg(a) {
            return Err(invalid(format!("step position {a} must be >= 0 or +inf")));
        }
        Ok(Ddf::Step(a))
    }

    pub fn eps0() -> Ddf {
        Ddf::Step(0.0)
    }

    pub fn scaled(base: BaseCdf, scale: f64) -> Result<Ddf> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(invalid(format!("scale {scale} must be finite and > 0")));
        }
        Ok(Ddf::Scaled { base, scale })
    }

    /// Piecewise-linear d.d.f. through `(x, value)` knots starting at `(0, 0)`;
    /// a repeated `x` encodes a jump.
    pub fn knots(points: Vec<(f64, f64)>) -> Result<Ddf> {
        let k = MonotoneKnots::new(points, 0.0)?;
        if k.last().1 > 1.0 {
            return Err(invalid("distribution values must stay in [0, 1]"));
        }
        Ok(Ddf::Knots(k))
    }

    pub fn min_of(items: Vec<Ddf>) -> Result<Ddf> {
        match items.len() {
            0 => Err(invalid("pointwise minimum of an empty family")),
            1 => Ok(items.into_iter().next().expect("one element")),
            _ => Ok(Ddf::PointwiseMin(items.into())),
        }
    }

    /// `x ↦ F(φ(x))`. Steps stay steps: `ε_a ∘ φ = ε_b` with `b = sup { x : φ(x) ≤ a }`.
    pub fn compose(&self, map: &PhiMap) -> Ddf {
        match self {
            Ddf::Step(a) => Ddf::Step(map.threshold(*a)),
            Ddf::Composed { inner, map: first } => match first.then_after(map) {
                Some(m) => Ddf::Composed { inner: inner.clone(), map: m },
                None => Ddf::Composed { inner: Arc::new(self.clone()), map: map.clone() },
            },
            _ if *map == PhiMap::identity() => self.clone(),
            _ => Ddf::Composed { inner: Arc::new(self.clone()), map: map.clone() },
        }
    }

    /// `ε_0` in closed form.
    pub fn is_eps0(&self) -> bool {
        matches!(self, Ddf::Step(a) if *a == 0.0)
    }

    /// Left-continuous evaluation; `F(x) = 0` for `x ≤ 0` and `F(∞) = 1`.
    pub fn eval(&self, x: f64) -> f64 {
        if x.is_nan() || x <= 0.0 {
            return 0.0;
        }
        if x.is_infinite() {
            return 1.0;
        }
        match self {
            Ddf::Step(a) => {
                if x > *a {
                    1.0
                } else {
                    0.0
                }
            }
            Ddf::Scaled { base, scale } => base.eval(x / scale),
            Ddf::Knots(k) => k.eval(x),
            Ddf::Composed { inner, map } => inner.eval(map.eval(x)),
            Ddf::FromQuasiInverse(q) => q.distribution_at(x),
            Ddf::Convolution(c) => c.eval(x),
            Ddf::PointwiseMin(items) => items.iter().map(|f| f.eval(x)).fold(1.0, f64::min),
        }
    }

    /// Right limit `lim_{y↓x} F(y)`.
    pub fn eval_right(&self, x: f64) -> f64 {
        if x.is_infinite() {
            return 1.0;
        }
        if x.is_nan() || x < 0.0 {
            return 0.0;
        }
        match self {
            Ddf::Step(a) => {
                if x >= *a {
                    1.0
                } else {
                    0.0
                }
            }
            Ddf::Scaled { base, scale } => base.eval_right(x / scale),
            Ddf::Knots(k) => k.eval_right(x),
            Ddf::Composed { inner, map } => {
                let y = map.eval_right(x);
                if map.eval(x) == y && !map.kinks().contains(&x) {
                    // continuous at x: the inner right limit applies only if the map is
                    // strictly increasing there, which holds for the closed-form maps
                    if matches!(map, PhiMap::Power(_) | PhiMap::Linear(_)) {
                        return inner.eval_right(y);
                    }
                }
                self.eval(nudge_up(x))
            }
            Ddf::PointwiseMin(items) => items.iter().map(|f| f.eval_right(x)).fold(1.0, f64::min),
            _ => self.eval(nudge_up(x)),
        }
    }

    /// `lim_{x→∞} F(x)`.
    pub fn tail(&self) -> f64 {
        match self {
            Ddf::Step(a) => {
                if a.is_finite() {
                    1.0
                } else {
                    0.0
                }
            }
            Ddf::Scaled { base, .. } => base.tail(),
            Ddf::Knots(k) => k.last().1,
            Ddf::Composed { inner, map } => {
                let (sup, attained) = map.sup_finite();
                if sup.is_infinite() {
                    if attained {
                        1.0
                    } else {
                        inner.tail()
                    }
                } else {
                    inner.eval(sup)
                }
            }
            Ddf::FromQuasiInverse(q) => q.finite_level(),
            Ddf::Convolution(c) => c.tail(),
            Ddf::PointwiseMin(items) => items.iter().map(Ddf::tail).fold(1.0, f64::min),
        }
    }

    /// `F ∈ D⁺`, decided from the analytic tail.
    pub fn is_in_dplus(&self) -> bool {
        self.tail() == 1.0
    }

    /// Whether `F(x) = 1` for some finite `x`. Conservative (`false`) for lazy results.
    pub fn attains_one(&self) -> bool {
        match self {
            Ddf::Step(a) => a.is_finite(),
            Ddf::Scaled { base, .. } => base.attains_tail() && base.tail() == 1.0,
            Ddf::Knots(k) => k.last().1 == 1.0,
            Ddf::Composed { inner, map } => {
                let (sup, attained) = map.sup_finite();
                (sup.is_infinite() && attained) || (sup.is_infinite() && inner.attains_one())
            }
            Ddf::FromQuasiInverse(q) => q.eval(1.0).is_finite(),
            Ddf::Convolution(_) => false,
            Ddf::PointwiseMin(items) => items.iter().all(Ddf::attains_one),
        }
    }

    /// Points where `F` may jump or bend, used to seed evaluation grids.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = match self {
            Ddf::Step(a) => {
                if a.is_finite() {
                    vec![*a]
                } else {
                    Vec::new()
                }
            }
            Ddf::Scaled { base, scale } => base.breakpoints().into_iter().map(|b| b * scale).collect(),
            Ddf::Knots(k) => k.xs().into_iter().filter(|&x| x > 0.0).collect(),
            Ddf::Composed { inner, map } => {
                let mut v: Vec<f64> = inner.breakpoints().into_iter().map(|b| map.threshold(b)).collect();
                v.extend(map.kinks());
                v
            }
            Ddf::FromQuasiInverse(q) => q.jump_positions(),
            Ddf::Convolution(c) => c.breakpoints(),
            Ddf::PointwiseMin(items) => items.iter().flat_map(Ddf::breakpoints).collect(),
        };
        out.retain(|x| x.is_finite() && *x > 0.0);
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// The left-continuous quasi-inverse `t ↦ sup { u : F(u) < t }`.
    pub fn quasi_inverse(&self) -> QuasiInverse {
        QuasiInverse::of(self)
    }
}

/// A point slightly to the right of `x`, used for numeric right limits.
pub(crate) fn nudge_up(x: f64) -> f64 {
    x + 1e-12 * x.max(1.0)
}

/// `eval(F, x)`.
pub fn eval(f: &Ddf, x: f64) -> f64 {
    f.eval(x)
}

/// `quasi_inverse(F)`.
pub fn quasi_inverse(f: &Ddf) -> QuasiInverse {
    f.quasi_inverse()
}

/// `F ∈ D⁺`.
pub fn is_in_dplus(f: &Ddf) -> bool {
    f.is_in_dplus()
}

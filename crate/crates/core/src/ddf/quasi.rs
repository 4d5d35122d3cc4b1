use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{BaseCdf, Ddf};
use crate::knots::MonotoneKnots;
use crate::phi::PhiMap;
use crate::tnorms::LOp;

/// Left-continuous quasi-inverse `q(t) = sup { u : F(u) < t }` of a d.d.f.
///
/// Defined on `[0, 1]` with `q(0) = 0`; values may be `∞`.
#[derive(Clone, Debug)]
pub enum QuasiInverse {
    /// `q(t) = a` for `t > 0`, the quasi-inverse of `ε_a`.
    Const(f64),
    /// `q(t) = scale · G^(t)`.
    Base { base: BaseCdf, scale: f64 },
    /// Mirrored knots of a tabulated d.d.f.
    Knots(MonotoneKnots),
    /// `q(t) = L(left(t), right(t))`.
    Combined { op: LOp, left: Arc<QuasiInverse>, right: Arc<QuasiInverse> },
    /// `q(t) = map(inner(t))`.
    Mapped { inner: Arc<QuasiInverse>, map: PhiMap },
    /// Computed from the d.d.f. by search.
    Numeric(Ddf),
}

impl QuasiInverse {
    pub fn of(f: &Ddf) -> QuasiInverse {
        match f {
            Ddf::Step(a) => QuasiInverse::Const(*a),
            Ddf::Scaled { base, scale } => QuasiInverse::Base { base: base.clone(), scale: *scale },
            Ddf::Knots(k) => QuasiInverse::Knots(k.swap()),
            // (F∘φ)^ = φ^{-1}∘F^ for bijective φ
            Ddf::Composed { inner, map } if map.in_minf() => QuasiInverse::Mapped {
                inner: Arc::new(QuasiInverse::of(inner)),
                map: map.quasi_inverse(),
            },
            Ddf::FromQuasiInverse(q) => (**q).clone(),
            other => QuasiInverse::Numeric(other.clone()),
        }
    }

    /// `L(q1, q2)` pointwise.
    pub fn combine(op: LOp, left: QuasiInverse, right: QuasiInverse) -> QuasiInverse {
        QuasiInverse::Combined { op, left: Arc::new(left), right: Arc::new(right) }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t.is_nan() || t <= 0.0 {
            return 0.0;
        }
        if t > 1.0 {
            return f64::INFINITY;
        }
        match self {
            QuasiInverse::Const(a) => *a,
            QuasiInverse::Base { base, scale } => scale * base.quantile(t),
            QuasiInverse::Knots(k) => k.eval(t),
            QuasiInverse::Combined { op, left, right } => op.eval(left.eval(t), right.eval(t)),
            QuasiInverse::Mapped { inner, map } => map.eval(inner.eval(t)),
            QuasiInverse::Numeric(f) => numeric_quasi_inverse(f, t),
        }
    }

    /// `sup { t : q(t) < ∞ }`, the tail value of the underlying d.d.f.
    pub fn finite_level(&self) -> f64 {
        match self {
            QuasiInverse::Const(a) => {
                if a.is_finite() {
                    1.0
                } else {
                    0.0
                }
            }
            QuasiInverse::Base { base, .. } => base.tail(),
            QuasiInverse::Knots(k) => {
                // flat tail of the source mirrors into a jump to ∞
                if k.tail_slope().is_infinite() {
                    k.last().0
                } else {
                    1.0
                }
            }
            QuasiInverse::Combined { left, right, .. } => left.finite_level().min(right.finite_level()),
            QuasiInverse::Mapped { inner, .. } => inner.finite_level(),
            QuasiInverse::Numeric(f) => f.tail(),
        }
    }

    /// The d.d.f. `x ↦ sup { t : q(t) < x }` at `x > 0`.
    pub fn distribution_at(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if self.eval(1.0) < x {
            return 1.0;
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.eval(mid) < x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Positions where the corresponding d.d.f. may jump (flat pieces of `q`).
    pub(crate) fn jump_positions(&self) -> Vec<f64> {
        match self {
            QuasiInverse::Const(a) => alloc::vec![*a],
            QuasiInverse::Base { base, scale } => base.breakpoints().into_iter().map(|b| b * scale).collect(),
            QuasiInverse::Knots(k) => k.points().iter().map(|p| p.1).collect(),
            QuasiInverse::Combined { op, left, right } => {
                let (a, b) = (left.jump_positions(), right.jump_positions());
                let mut out = Vec::new();
                for &u in a.iter().take(16) {
                    for &v in b.iter().take(16) {
                        out.push(op.eval(u, v));
                    }
                }
                out
            }
            QuasiInverse::Mapped { inner, map } => inner.jump_positions().into_iter().map(|v| map.eval(v)).collect(),
            QuasiInverse::Numeric(f) => f.breakpoints(),
        }
    }
}

/// `sup { u : F(u) < t }` by exponential search and bisection.
fn numeric_quasi_inverse(f: &Ddf, t: f64) -> f64 {
    if f.tail() < t {
        return f64::INFINITY;
    }
    let mut hi = 1.0f64;
    let mut steps = 0;
    while f.eval(hi) < t {
        hi *= 2.0;
        steps += 1;
        if steps > 1100 {
            return f64::INFINITY;
        }
    }
    let mut lo = 0.0f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f.eval(mid) < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // F(lo) < t <= F(hi) with hi - lo at rounding level; the supremum sits between
    if f.eval(hi) < t {
        hi
    } else {
        lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ddf::make_eps;

    /// `sup { u : F(u) < t }` over a grid.
    fn brute(f: &Ddf, t: f64, upto: f64, n: usize) -> f64 {
        let mut best = 0.0f64;
        for i in 0..=n {
            let u = upto * i as f64 / n as f64;
            if f.eval(u) < t {
                best = best.max(u);
            }
        }
        best
    }

    #[test]
    fn step_quasi_inverse_is_constant() {
        let f = make_eps(1.7).unwrap();
        let q = f.quasi_inverse();
        for t in [0.01, 0.3, 0.999, 1.0] {
            assert_eq!(q.eval(t), 1.7);
            assert!((brute(&f, t, 4.0, 40_000) - 1.7).abs() <= 1e-4);
        }
        assert_eq!(q.eval(0.0), 0.0);
    }

    #[test]
    fn exponential_quasi_inverse_matches_bisection() {
        let f = Ddf::scaled(BaseCdf::Exponential, 3.0).unwrap();
        let q = f.quasi_inverse();
        let numeric = QuasiInverse::Numeric(f.clone());
        for t in [0.05f64, 0.25, 0.5, 0.9, 0.999] {
            let closed = -3.0 * (1.0 - t).ln();
            assert!((q.eval(t) - closed).abs() < 1e-12 * closed.max(1.0));
            assert!((numeric.eval(t) - closed).abs() < 1e-9 * closed.max(1.0));
        }
        assert_eq!(q.eval(1.0), f64::INFINITY);
    }

    #[test]
    fn above_tail_is_infinite() {
        let f = Ddf::scaled(BaseCdf::HalfExponential, 1.0).unwrap();
        assert_eq!(f.quasi_inverse().eval(0.75), f64::INFINITY);
        assert_eq!(QuasiInverse::Numeric(f.clone()).eval(0.75), f64::INFINITY);
        assert_eq!(f.quasi_inverse().finite_level(), 0.5);
    }

    #[test]
    fn distribution_round_trip() {
        let f = Ddf::knots(alloc::vec![(0.0, 0.0), (1.0, 0.2), (1.0, 0.6), (3.0, 0.9)]).unwrap();
        let g = Ddf::FromQuasiInverse(Arc::new(f.quasi_inverse()));
        for i in 1..80 {
            let x = i as f64 * 0.05;
            assert!((f.eval(x) - g.eval(x)).abs() < 1e-12, "x={x}");
        }
        assert_eq!(g.tail(), 0.9);
    }

    #[test]
    fn galois_inequalities_on_mixed_functions() {
        let fs = [
            make_eps(0.5).unwrap(),
            Ddf::scaled(BaseCdf::UniformUnit, 2.0).unwrap(),
            Ddf::knots(alloc::vec![(0.0, 0.0), (1.0, 0.3), (2.0, 0.3), (2.0, 0.8), (4.0, 1.0)]).unwrap(),
            Ddf::scaled(BaseCdf::Exponential, 1.0).unwrap().compose(&PhiMap::Power(2.0)),
        ];
        for f in &fs {
            let q = f.quasi_inverse();
            for i in 1..100 {
                let x = i as f64 * 0.061;
                assert!(q.eval(f.eval(x)) <= x + 1e-9, "{f:?} x={x}");
                let t = i as f64 / 100.0;
                let u = q.eval(t);
                if u.is_finite() {
                    assert!(f.eval(u) <= t + 1e-12, "{f:?} t={t}");
                }
            }
        }
    }
}

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A nondecreasing, left-continuous, piecewise-linear map on `[0, ∞)`.
///
/// Knots are `(x, y)` pairs sorted by `x`. Repeated `x` values encode a jump:
/// the first knot at that `x` holds the left value (the value taken *at* `x`)
/// and the last one holds the right limit. Between knots the map is linear.
/// Past the last knot the map continues with `tail_slope`, which may be `0`
/// (flat) or `+∞` (the map jumps to `+∞` right after the last knot).
///
/// The same type backs tabulated distribution functions and custom monotone
/// transforms, and [`MonotoneKnots::swap`] yields the left-continuous
/// quasi-inverse exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneKnots {
    points: Vec<(f64, f64)>,
    tail_slope: f64,
}

impl MonotoneKnots {
    pub fn new(points: Vec<(f64, f64)>, tail_slope: f64) -> Result<Self> {
        let Some(&(x0, y0)) = points.first() else {
            return Err(Error::InvalidKnots("empty knot list".into()));
        };
        if x0 != 0.0 || y0 != 0.0 {
            return Err(Error::InvalidKnots(format!(
                "first knot must be (0, 0), got ({x0}, {y0})"
            )));
        }
        for w in points.windows(2) {
            let ((xa, ya), (xb, yb)) = (w[0], w[1]);
            if !(xa.is_finite() && ya.is_finite() && xb.is_finite() && yb.is_finite()) {
                return Err(Error::InvalidKnots("knots must be finite".into()));
            }
            if xb < xa || yb < ya {
                return Err(Error::InvalidKnots(format!(
                    "knots must be nondecreasing in both coordinates: ({xa}, {ya}) then ({xb}, {yb})"
                )));
            }
        }
        if tail_slope.is_nan() || tail_slope < 0.0 {
            return Err(Error::InvalidKnots(format!("tail slope {tail_slope} must be >= 0")));
        }
        Ok(Self { points, tail_slope })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn tail_slope(&self) -> f64 {
        self.tail_slope
    }

    pub fn last(&self) -> (f64, f64) {
        *self.points.last().expect("knot list is never empty")
    }

    fn tail_at(&self, x: f64) -> f64 {
        let (xl, yl) = self.last();
        if self.tail_slope == 0.0 {
            yl
        } else if self.tail_slope.is_infinite() {
            f64::INFINITY
        } else {
            yl + self.tail_slope * (x - xl)
        }
    }

    /// Left-continuous evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x.is_infinite() {
            return if self.tail_slope == 0.0 { self.last().1 } else { f64::INFINITY };
        }
        let pts = &self.points;
        let i = pts.partition_point(|p| p.0 < x);
        if i == pts.len() {
            return self.tail_at(x);
        }
        let (xi, yi) = pts[i];
        if xi == x {
            return yi;
        }
        let (xp, yp) = pts[i - 1];
        yp + (yi - yp) * (x - xp) / (xi - xp)
    }

    /// Right limit `lim_{y↓x}`.
    pub fn eval_right(&self, x: f64) -> f64 {
        if x.is_infinite() {
            return self.eval(x);
        }
        let x = x.max(0.0);
        let pts = &self.points;
        let i = pts.partition_point(|p| p.0 <= x);
        if i == pts.len() {
            let (xl, yl) = self.last();
            return if x == xl && self.tail_slope.is_finite() { yl } else { self.tail_at(x) };
        }
        let (xp, yp) = pts[i - 1];
        let (xi, yi) = pts[i];
        yp + (yi - yp) * (x - xp) / (xi - xp)
    }

    /// Mirror the graph across the diagonal.
    ///
    /// For a left-continuous nondecreasing map `f` the result evaluates to
    /// `sup { u : f(u) < t }`.
    pub fn swap(&self) -> Self {
        let points = self.points.iter().map(|&(x, y)| (y, x)).collect();
        let tail_slope = if self.tail_slope == 0.0 {
            f64::INFINITY
        } else if self.tail_slope.is_infinite() {
            0.0
        } else {
            1.0 / self.tail_slope
        };
        Self { points, tail_slope }
    }

    /// Distinct knot abscissae.
    pub fn xs(&self) -> Vec<f64> {
        let mut xs: Vec<f64> = self.points.iter().map(|p| p.0).collect();
        xs.dedup();
        xs
    }

    pub fn has_jumps(&self) -> bool {
        self.points.windows(2).any(|w| w[0].0 == w[1].0 && w[0].1 != w[1].1)
    }

    /// Strictly increasing and continuous on `[0, ∞)`.
    pub fn is_strictly_increasing(&self) -> bool {
        let inner = self.points.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1);
        inner && self.tail_slope > 0.0 && self.tail_slope.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn jumpy() -> MonotoneKnots {
        MonotoneKnots::new(vec![(0.0, 0.0), (1.0, 0.2), (1.0, 0.7), (2.0, 1.0)], 0.0).unwrap()
    }

    #[test]
    fn left_continuous_at_jump() {
        let k = jumpy();
        assert_eq!(k.eval(1.0), 0.2);
        assert_eq!(k.eval_right(1.0), 0.7);
        assert!((k.eval(0.5) - 0.1).abs() < 1e-15);
        assert!((k.eval(1.5) - 0.85).abs() < 1e-15);
        assert_eq!(k.eval(5.0), 1.0);
        assert_eq!(k.eval(0.0), 0.0);
    }

    #[test]
    fn swap_is_the_quasi_inverse() {
        let k = jumpy();
        let q = k.swap();
        // brute force sup { u : k(u) < t } on a fine grid
        for &t in &[0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.8, 0.99, 1.0] {
            let mut sup = 0.0f64;
            for i in 0..=40_000 {
                let u = i as f64 * 1e-4;
                if k.eval(u) < t {
                    sup = sup.max(u);
                }
            }
            assert!((q.eval(t) - sup).abs() < 2e-4, "t={t}: {} vs {sup}", q.eval(t));
        }
        assert_eq!(q.eval(1.5), f64::INFINITY);
    }

    #[test]
    fn flat_segment_becomes_jump() {
        let k = MonotoneKnots::new(vec![(0.0, 0.0), (1.0, 0.5), (2.0, 0.5), (3.0, 1.0)], 0.0).unwrap();
        let q = k.swap();
        assert_eq!(q.eval(0.5), 1.0);
        assert_eq!(q.eval_right(0.5), 2.0);
    }

    #[test]
    fn rejects_bad_knots() {
        assert!(MonotoneKnots::new(vec![], 0.0).is_err());
        assert!(MonotoneKnots::new(vec![(0.0, 0.1)], 0.0).is_err());
        assert!(MonotoneKnots::new(vec![(0.0, 0.0), (1.0, 0.5), (0.5, 0.6)], 0.0).is_err());
        assert!(MonotoneKnots::new(vec![(0.0, 0.0), (1.0, 0.5), (2.0, 0.4)], 0.0).is_err());
        assert!(MonotoneKnots::new(vec![(0.0, 0.0)], -1.0).is_err());
    }
}

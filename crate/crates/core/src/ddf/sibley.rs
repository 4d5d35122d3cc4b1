//! The modified Lévy (Sibley) metric on d.d.f.s.
//!
//! `d(F, G)` is the infimum of `h ∈ (0, 1]` such that
//! `F(x − h) − h ≤ G(x) ≤ F(x + h) + h` and the same with `F` and `G`
//! exchanged, for every `x ∈ (0, 1/h)`. The conditions only get weaker as `h`
//! grows, so the infimum is found by bisection.

use alloc::vec::Vec;

use super::Ddf;

/// Bisection steps on `h`; `2^-20` is well below the metric tolerance.
pub const SIBLEY_DEPTH: u32 = 20;

const GRID: usize = 1024;

pub fn sibley_distance(f: &Ddf, g: &Ddf) -> f64 {
    let mut xs_f = f.breakpoints();
    let mut xs_g = g.breakpoints();
    xs_f.truncate(256);
    xs_g.truncate(256);
    let admissible = |h: f64| worst_violation(f, g, &xs_f, &xs_g, h) <= 0.0 && worst_violation(g, f, &xs_g, &xs_f, h) <= 0.0;
    if admissible(f64::MIN_POSITIVE) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..SIBLEY_DEPTH {
        let mid = 0.5 * (lo + hi);
        if admissible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `d(F, ε_0) = inf { h : F(h+) ≥ 1 − h }`, solved directly.
///
/// Equivalently `d(F, ε_0) < t` iff `F(t) > 1 − t`.
pub fn distance_to_eps0(f: &Ddf) -> f64 {
    let ok = |h: f64| f.eval_right(h) >= 1.0 - h;
    if ok(0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Largest violation of `F(x − h) − h ≤ G(x) ≤ F(x + h) + h` on `(0, 1/h)`.
fn worst_violation(f: &Ddf, g: &Ddf, bf: &[f64], bg: &[f64], h: f64) -> f64 {
    let end = 1.0 / h;
    let at = |x: f64, right: bool| -> f64 {
        let (fl, fu, gx) = if right {
            (f.eval_right(x - h), f.eval_right(x + h), g.eval_right(x))
        } else {
            (f.eval(x - h), f.eval(x + h), g.eval(x))
        };
        (fl - h - gx).max(gx - fu - h)
    };
    let inside = |x: f64| x > 0.0 && x < end;
    let mut worst = f64::NEG_INFINITY;
    // x → 0+ and x → 1/h from the left
    worst = worst.max(at(0.0, true));
    if end.is_finite() {
        worst = worst.max(at(end, false));
    }
    let mut candidates: Vec<f64> = Vec::with_capacity(3 * (bf.len() + bg.len()));
    for &b in bg {
        candidates.push(b);
    }
    for &b in bf {
        candidates.push(b + h);
        candidates.push(b - h);
    }
    for &x in &candidates {
        if inside(x) {
            worst = worst.max(at(x, false));
        }
        if x >= 0.0 && x < end {
            worst = worst.max(at(x, true));
        }
        if worst > 0.0 {
            return worst;
        }
    }
    // continuous parts: grid over the window, then refine around the worst cell
    let span = end.min(1e6);
    let step = span / GRID as f64;
    let mut best = (f64::NEG_INFINITY, 0usize);
    for i in 1..GRID {
        let v = at(i as f64 * step, false);
        if v > best.0 {
            best = (v, i);
        }
    }
    worst = worst.max(best.0);
    if worst > 0.0 {
        return worst;
    }
    let (mut a, mut b) = ((best.1 as f64 - 1.0) * step, (best.1 as f64 + 1.0) * step);
    let phi = 0.5 * (libm::sqrt(5.0) - 1.0);
    for _ in 0..40 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        let (vc, vd) = (at(c.max(0.0), false), at(d.min(span), false));
        worst = worst.max(vc).max(vd);
        if vc >= vd {
            b = d;
        } else {
            a = c;
        }
    }
    worst
}

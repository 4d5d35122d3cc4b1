//! Triangle functions: sup/inf convolutions of d.d.f.s and the pointwise minimum.
//!
//! `τ_{T,L}(F, G)(x) = sup { T(F(u), G(v)) : L(u, v) = x }` and
//! `τ_{T*,L}(F, G)(x) = inf { T*(F(u), G(v)) : L(u, v) = x }`; with `L = +`
//! these are `τ_T` and `τ_{T*}`. For `T = M` the sup-convolution is computed
//! exactly through quasi-inverses, `τ_{M,L}(F, G)^ = L(F^, G^)`. Everything
//! else goes through a lazily evaluated grid search.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::ddf::{BaseCdf, Ddf, QuasiInverse};
use crate::math;
use crate::phi::PhiMap;
use crate::report::{witness, Check, Report, Tolerances};
use crate::sampling::Sampler;
use crate::tnorms::{LOp, TConorm, TNorm};

/// Points in `[0, x]` scanned by the grid convolution.
pub const GRID_POINTS: usize = 2048;

/// Breakpoints per argument that seed the candidate set.
const MAX_SEEDS: usize = 32;

#[derive(Clone, Debug, PartialEq)]
pub enum TriangleFn {
    TauT(TNorm),
    TauTStar(TConorm),
    TauTL(TNorm, LOp),
    TauTStarL(TConorm, LOp),
    /// `M(F, G)(x) = min(F(x), G(x))`, the largest triangle function.
    PointwiseM,
    /// `τ^φ(F, G)(x) = τ(F∘φ^, G∘φ^)(φ(x))`.
    PhiTransformed { inner: Box<TriangleFn>, phi: PhiMap },
}

/// How a triangle function result was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalPath {
    Exact,
    Grid,
}

impl EvalPath {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalPath::Exact => "exact",
            EvalPath::Grid => "grid",
        }
    }
}

impl TriangleFn {
    pub fn tau_m() -> Self {
        TriangleFn::TauT(TNorm::M)
    }

    /// `τ_{M*}`, the inf-convolution of `max`.
    pub fn tau_m_star() -> Self {
        TriangleFn::TauTStar(TNorm::M.dual())
    }

    pub fn tau_ml(op: LOp) -> Self {
        TriangleFn::TauTL(TNorm::M, op)
    }

    pub fn name(&self) -> String {
        match self {
            TriangleFn::TauT(t) => format!("tau_{}", t.name()),
            TriangleFn::TauTStar(s) => format!("tau_{}*", s.tnorm().name()),
            TriangleFn::TauTL(t, l) => format!("tau_{{{},{:?}}}", t.name(), l),
            TriangleFn::TauTStarL(s, l) => format!("tau_{{{}*,{:?}}}", s.tnorm().name(), l),
            TriangleFn::PointwiseM => "M".into(),
            TriangleFn::PhiTransformed { inner, phi } => format!("({})^{:?}", inner.name(), phi),
        }
    }

    /// `τ^φ`; the identity map returns `self` unchanged.
    pub fn phi_transform(&self, phi: PhiMap) -> TriangleFn {
        if phi == PhiMap::identity() {
            return self.clone();
        }
        TriangleFn::PhiTransformed { inner: Box::new(self.clone()), phi }
    }

    /// The operation `L` in the constraint `L(u, v) = x`.
    pub fn constraint_op(&self) -> LOp {
        match self {
            TriangleFn::TauTL(_, l) | TriangleFn::TauTStarL(_, l) => l.clone(),
            _ => LOp::Sum,
        }
    }

    /// Whether [`TriangleFn::apply`] avoids the grid.
    pub fn path(&self) -> EvalPath {
        match self {
            TriangleFn::TauT(TNorm::M) | TriangleFn::TauTL(TNorm::M, _) | TriangleFn::PointwiseM => EvalPath::Exact,
            TriangleFn::PhiTransformed { inner, .. } => inner.path(),
            _ => EvalPath::Grid,
        }
    }

    /// `τ(F, G)`, exact where a closed path exists.
    pub fn apply(&self, f: &Ddf, g: &Ddf) -> Ddf {
        self.apply_with(f, g, true)
    }

    /// `τ(F, G)` through the grid search even when an exact path exists.
    pub fn apply_grid(&self, f: &Ddf, g: &Ddf) -> Ddf {
        self.apply_with(f, g, false)
    }

    fn apply_with(&self, f: &Ddf, g: &Ddf, exact: bool) -> Ddf {
        if let TriangleFn::PhiTransformed { inner, phi } = self {
            let q = phi.quasi_inverse();
            let r = inner.apply_with(&f.compose(&q), &g.compose(&q), exact);
            return r.compose(phi);
        }
        if f.is_eps0() {
            return g.clone();
        }
        if g.is_eps0() {
            return f.clone();
        }
        match self {
            TriangleFn::PointwiseM => Ddf::PointwiseMin(Arc::from(vec![f.clone(), g.clone()])),
            TriangleFn::TauT(TNorm::M) if exact => min_sup_convolution(&LOp::Sum, f, g),
            TriangleFn::TauTL(TNorm::M, op) if exact => min_sup_convolution(op, f, g),
            TriangleFn::TauT(t) => Convolution::lazy(Combine::Sup(t.clone()), LOp::Sum, f, g),
            TriangleFn::TauTL(t, op) => Convolution::lazy(Combine::Sup(t.clone()), op.clone(), f, g),
            TriangleFn::TauTStar(s) => Convolution::lazy(Combine::Inf(s.clone()), LOp::Sum, f, g),
            TriangleFn::TauTStarL(s, op) => Convolution::lazy(Combine::Inf(s.clone()), op.clone(), f, g),
            TriangleFn::PhiTransformed { .. } => unreachable!("handled above"),
        }
    }
}

/// `τ_{M,L}(F, G)` through `L(F^, G^)`, keeping closed forms closed.
fn min_sup_convolution(op: &LOp, f: &Ddf, g: &Ddf) -> Ddf {
    match (f, g) {
        (Ddf::Step(a), Ddf::Step(b)) => Ddf::Step(op.eval(*a, *b)),
        (Ddf::Scaled { base: b1, scale: c1 }, Ddf::Scaled { base: b2, scale: c2 })
            if b1 == b2 && op.is_homogeneous() =>
        {
            Ddf::Scaled { base: b1.clone(), scale: op.eval(*c1, *c2) }
        }
        _ => Ddf::FromQuasiInverse(Arc::new(QuasiInverse::combine(op.clone(), f.quasi_inverse(), g.quasi_inverse()))),
    }
}

/// `G⁻¹(F(u))` without rounding when `F` is a scaled copy of `G`.
fn level(base: &BaseCdf, f: &Ddf, u: f64) -> Option<f64> {
    match f {
        Ddf::Scaled { base: b, scale } if b == base => Some(if u <= 0.0 { 0.0 } else { u / scale }),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Combine {
    Sup(TNorm),
    Inf(TConorm),
}

/// A sup- or inf-convolution evaluated pointwise on demand.
#[derive(Clone, Debug)]
pub struct Convolution {
    combine: Combine,
    op: LOp,
    f: Ddf,
    g: Ddf,
    bf: Vec<f64>,
    bg: Vec<f64>,
}

impl Convolution {
    pub fn new(combine: Combine, op: LOp, f: &Ddf, g: &Ddf) -> Self {
        let seeds = |d: &Ddf| {
            let mut b = d.breakpoints();
            b.truncate(MAX_SEEDS);
            b
        };
        Self { combine, op, bf: seeds(f), bg: seeds(g), f: f.clone(), g: g.clone() }
    }

    fn lazy(combine: Combine, op: LOp, f: &Ddf, g: &Ddf) -> Ddf {
        Ddf::Convolution(Arc::new(Self::new(combine, op, f, g)))
    }

    fn term(&self, u: f64, x: f64) -> f64 {
        let v = self.op.section(u, x);
        if let Combine::Sup(TNorm::TG(tg)) = &self.combine {
            if let (Some(lu), Some(lv)) = (level(tg.base(), &self.f, u), level(tg.base(), &self.g, v)) {
                return tg.eval_levels(lu, lv);
            }
        }
        let (a, b) = (self.f.eval(u), self.g.eval(v));
        match &self.combine {
            Combine::Sup(t) => t.eval(a, b),
            Combine::Inf(s) => s.eval(a, b),
        }
    }

    fn improves(&self, candidate: f64, current: f64) -> bool {
        match self.combine {
            Combine::Sup(_) => candidate > current,
            Combine::Inf(_) => candidate < current,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x.is_nan() || x <= 0.0 {
            return 0.0;
        }
        if x.is_infinite() {
            return 1.0;
        }
        self.eval_convex(x).unwrap_or_else(|| self.eval_scan(x))
    }

    /// `τ_{T_G}` of two scaled copies of `G` with `α > 1`: the term is a
    /// decreasing function of `(s/a)^e + ((x−s)/b)^e`, `e < 0`, which is convex
    /// in `s`, so golden-section search finds the supremum.
    fn eval_convex(&self, x: f64) -> Option<f64> {
        let Combine::Sup(TNorm::TG(tg)) = &self.combine else { return None };
        if !self.op.is_sum() || tg.alpha() <= 1.0 {
            return None;
        }
        level(tg.base(), &self.f, 1.0)?;
        level(tg.base(), &self.g, 1.0)?;
        let (mut a, mut b) = (0.0, x);
        let r = 0.5 * (math::sqrt(5.0) - 1.0);
        let mut best = 0.0f64;
        for _ in 0..100 {
            let c = b - r * (b - a);
            let d = a + r * (b - a);
            let (vc, vd) = (self.term(c, x), self.term(d, x));
            best = best.max(vc).max(vd);
            if vc >= vd {
                b = d;
            } else {
                a = c;
            }
        }
        Some(best.clamp(0.0, 1.0))
    }

    fn eval_scan(&self, x: f64) -> f64 {
        let delta = 1e-9 * x.max(1.0);
        let mut best = self.term(0.0, x);
        let consider = |u: f64, best: &mut f64| {
            if (0.0..=x).contains(&u) {
                let v = self.term(u, x);
                if self.improves(v, *best) {
                    *best = v;
                }
            }
        };
        consider(x, &mut best);

        // coarse scan
        let n = GRID_POINTS;
        let step = x / n as f64;
        let mut cell = 0usize;
        let mut cell_val = best;
        for k in 1..n {
            let v = self.term(k as f64 * step, x);
            if self.improves(v, cell_val) {
                cell_val = v;
                cell = k;
            }
        }
        if self.improves(cell_val, best) {
            best = cell_val;
        }

        // jumps of F, jumps of G, and the windows between them
        for &b in &self.bf {
            if b < x {
                consider(b, &mut best);
                consider(b + delta, &mut best);
            }
        }
        let mut u_of_g = Vec::with_capacity(self.bg.len());
        for &c in &self.bg {
            if c < x {
                let u = self.op.section(c, x);
                u_of_g.push(u);
                consider(u, &mut best);
                consider(u - delta, &mut best);
            }
        }
        if matches!(self.combine, Combine::Sup(_)) {
            for &b in &self.bf {
                for &umax in &u_of_g {
                    if b < umax {
                        consider(0.5 * (b + umax), &mut best);
                    }
                }
            }
        }

        // golden-section refinement of the best grid cell
        if cell > 0 {
            let (mut a, mut b) = ((cell as f64 - 1.0) * step, ((cell as f64 + 1.0) * step).min(x));
            let r = 0.5 * (math::sqrt(5.0) - 1.0);
            for _ in 0..30 {
                let c = b - r * (b - a);
                let d = a + r * (b - a);
                let (vc, vd) = (self.term(c, x), self.term(d, x));
                if self.improves(vc, best) {
                    best = vc;
                }
                if self.improves(vd, best) {
                    best = vd;
                }
                if self.improves(vc, vd) || vc == vd {
                    b = d;
                } else {
                    a = c;
                }
            }
        }
        best.clamp(0.0, 1.0)
    }

    /// `lim_{x→∞}` of the convolution.
    pub fn tail(&self) -> f64 {
        let (tf, tg) = (self.f.tail(), self.g.tail());
        match &self.combine {
            Combine::Sup(TNorm::Z) => {
                let a = if self.f.attains_one() { tg } else { 0.0 };
                let b = if self.g.attains_one() { tf } else { 0.0 };
                a.max(b)
            }
            Combine::Sup(t) => t.eval(tf, tg),
            Combine::Inf(_) => tf.min(tg),
        }
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.bf.iter().chain(&self.bg).copied().collect();
        for &a in &self.bf {
            for &b in &self.bg {
                out.push(self.op.eval(a, b));
            }
        }
        out
    }
}

/// Order between two d.d.f.s (or triangle function values) on a grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Relation {
    Le,
    Ge,
    Eq,
    Incomparable,
}

impl Relation {
    pub fn from_flags(le: bool, ge: bool) -> Relation {
        match (le, ge) {
            (true, true) => Relation::Eq,
            (true, false) => Relation::Le,
            (false, true) => Relation::Ge,
            (false, false) => Relation::Incomparable,
        }
    }

    pub fn reversed(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            r => r,
        }
    }
}

/// Result of [`compare_ddfs`]: largest excess of each side over the other.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub relation: Relation,
    /// `max (a − b)` and where it occurs.
    pub a_over_b: (f64, f64),
    /// `max (b − a)` and where it occurs.
    pub b_over_a: (f64, f64),
}

/// Relative horizontal slack that absorbs rounding in jump positions.
pub const JUMP_SLACK: f64 = 1e-9;

/// How far `lower` exceeds `upper` near `x`, tolerating jump positions that
/// differ by rounding: `lower(x(1 − s)) − upper(x)`.
pub fn excess(lower: &Ddf, upper: &Ddf, x: f64) -> f64 {
    lower.eval(x * (1.0 - JUMP_SLACK)) - upper.eval(x)
}

/// Pointwise comparison of `a` and `b` on `grid` with tolerance `tol`.
pub fn compare_ddfs(a: &Ddf, b: &Ddf, grid: &[f64], tol: f64) -> Comparison {
    let mut ab = (f64::NEG_INFINITY, f64::NAN);
    let mut ba = (f64::NEG_INFINITY, f64::NAN);
    for &x in grid {
        let d1 = excess(a, b, x);
        if d1 > ab.0 {
            ab = (d1, x);
        }
        let d2 = excess(b, a, x);
        if d2 > ba.0 {
            ba = (d2, x);
        }
    }
    let relation = Relation::from_flags(ab.0 <= tol, ba.0 <= tol);
    Comparison { relation, a_over_b: ab, b_over_a: ba }
}

/// `τ1(F, G)` against `τ2(F, G)` on `grid`.
pub fn compare_pointwise(t1: &TriangleFn, t2: &TriangleFn, f: &Ddf, g: &Ddf, grid: &[f64], tol: f64) -> Comparison {
    compare_ddfs(&t1.apply(f, g), &t2.apply(f, g), grid, tol)
}

/// Evaluation points adapted to `fs`: quantiles, breakpoints with nudges on
/// both sides, and their pairwise `L`-combinations.
pub fn probe_points(fs: &[&Ddf], op: &LOp) -> Vec<f64> {
    const LEVELS: [f64; 7] = [0.02, 0.1, 0.25, 0.5, 0.75, 0.9, 0.98];
    let mut base = Vec::new();
    for f in fs {
        let q = f.quasi_inverse();
        for t in LEVELS {
            let x = q.eval(t);
            if x.is_finite() && x > 0.0 {
                base.push(x);
            }
        }
        let mut b = f.breakpoints();
        b.truncate(16);
        base.extend(b);
    }
    base.sort_by(f64::total_cmp);
    base.dedup();
    if base.len() > 24 {
        let stride = base.len() as f64 / 24.0;
        base = (0..24).map(|i| base[(i as f64 * stride) as usize]).collect();
    }
    let mut out = base.clone();
    for (i, &a) in base.iter().enumerate() {
        for &b in &base[i..] {
            out.push(op.eval(a, b));
        }
    }
    let mut nudged = Vec::with_capacity(out.len() * 3);
    for x in out {
        nudged.push(x);
        nudged.push(x * (1.0 + 1e-6));
        nudged.push(x * (1.0 - 1e-6));
    }
    nudged.retain(|x| x.is_finite() && *x > 0.0);
    nudged.sort_by(f64::total_cmp);
    nudged.dedup();
    nudged
}

/// At most `cap` points, evenly strided.
pub(crate) fn thin(points: Vec<f64>, cap: usize) -> Vec<f64> {
    if points.len() <= cap {
        return points;
    }
    let stride = points.len() as f64 / cap as f64;
    (0..cap).map(|i| points[(i as f64 * stride) as usize]).collect()
}

/// The d.d.f.s used when a caller does not supply samples.
pub fn default_samples() -> Vec<Ddf> {
    vec![
        Ddf::Step(1.0),
        Ddf::Scaled { base: BaseCdf::Exponential, scale: 1.0 },
        Ddf::Scaled { base: BaseCdf::UniformUnit, scale: 2.0 },
        Ddf::Step(0.4),
    ]
}

/// Sample the triangle function axioms on `samples` (at least three d.d.f.s).
pub fn check_triangle_axioms(tau: &TriangleFn, samples: &[Ddf], seed: u64) -> Report {
    let tol = Tolerances::default();
    let mut report = Report::new(format!("triangle function axioms for {}", tau.name()));
    let path = tau.path().as_str();
    if samples.len() < 3 {
        report.note("fewer than three sample functions: axioms not checked");
        let mut c = Check::new("sample count", 0.0);
        c.record(1.0, witness(&[("samples", &[samples.len() as f64])]));
        c.finish();
        report.push(c);
        return report;
    }
    let mut rng = Sampler::new(seed);
    let op = tau.constraint_op();
    let grid_for = |fs: &[&Ddf]| thin(probe_points(fs, &op), 40);

    let mut identity = Check::new("identity", tol.exact).with_path("exact");
    for (i, f) in samples.iter().enumerate() {
        let r = tau.apply(&Ddf::eps0(), f);
        for x in grid_for(&[f]) {
            identity.observe(math::abs(r.eval(x) - f.eval(x)), || witness(&[("sample", &[i as f64]), ("x", &[x])]));
        }
    }
    identity.finish();

    let mut comm = Check::new("commutativity", tol.grid).with_path(path);
    let mut mono = Check::new("monotonicity", tol.grid).with_path(path);
    let mut valid = Check::new("result is a distance distribution function", tol.grid).with_path(path);
    for i in 0..samples.len() {
        for j in i..samples.len() {
            let (f, g) = (&samples[i], &samples[j]);
            let fg = tau.apply(f, g);
            let gf = tau.apply(g, f);
            let grid = grid_for(&[f, g]);
            let w = |x: f64| witness(&[("i", &[i as f64]), ("j", &[j as f64]), ("x", &[x])]);
            let mut prev = 0.0f64;
            for &x in &grid {
                comm.observe(math::abs(fg.eval(x) - gf.eval(x)), || w(x));
                let v = fg.eval(x);
                let bad = (prev - v).max(-v).max(v - 1.0);
                valid.observe(bad.max(0.0), || w(x));
                prev = v;
            }
            // F ∧ H ≤ F, so τ(F ∧ H, G) ≤ τ(F, G)
            let h = &samples[rng.index(samples.len())];
            let lower = Ddf::PointwiseMin(Arc::from(vec![f.clone(), h.clone()]));
            let lg = tau.apply(&lower, g);
            for &x in &grid {
                mono.observe(excess(&lg, &fg, x).max(0.0), || w(x));
            }
        }
    }
    for c in [&mut comm, &mut mono, &mut valid] {
        c.finish();
    }

    let mut assoc = Check::new("associativity", tol.grid).with_path(path);
    let triples = if tau.path() == EvalPath::Exact { 8 } else { 3 };
    for _ in 0..triples {
        let (a, b, c) = (rng.index(samples.len()), rng.index(samples.len()), rng.index(samples.len()));
        let (f, g, h) = (&samples[a], &samples[b], &samples[c]);
        let left = tau.apply(&tau.apply(f, g), h);
        let right = tau.apply(f, &tau.apply(g, h));
        let mut grid = grid_for(&[f, g, h]);
        if tau.path() == EvalPath::Grid {
            grid = thin(grid, 6);
        }
        for x in grid {
            let d = math::abs(left.eval(x) - right.eval(x));
            assoc.observe(d, || witness(&[("triple", &[a as f64, b as f64, c as f64]), ("x", &[x])]));
        }
    }
    assoc.finish();
    if !assoc.passed {
        report.note("associativity fails on the sampled triples; the triangle function is non-associative");
    }

    report.push(identity);
    report.push(comm);
    report.push(mono);
    report.push(valid);
    report.push(assoc);
    report
}

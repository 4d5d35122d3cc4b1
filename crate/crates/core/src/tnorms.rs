//! t-norms, their dual t-conorms, and operations `L` on `[0, ∞]`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use core::fmt;

use crate::ddf::BaseCdf;
use crate::error::{Error, Result};
use crate::math;
use crate::phi::PhiMap;
use crate::report::{witness, Check, Report, Tolerances};
use crate::sampling::Sampler;

type BinOp = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A user-supplied binary operation on `[0, 1]`, not assumed to satisfy the axioms.
#[derive(Clone)]
pub struct CustomOp {
    pub name: String,
    op: BinOp,
}

impl CustomOp {
    pub fn new(name: impl Into<String>, op: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { name: name.into(), op: Arc::new(op) }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.op)(x, y)
    }
}

impl fmt::Debug for CustomOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomOp({})", self.name)
    }
}

impl PartialEq for CustomOp {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.op, &other.op)
    }
}

/// `T_G(x, y) = G({ G⁻¹(x)^{1/(1−α)} + G⁻¹(y)^{1/(1−α)} }^{1−α})`.
#[derive(Clone, Debug, PartialEq)]
pub struct TgNorm {
    base: BaseCdf,
    alpha: f64,
    warning: Option<String>,
}

impl TgNorm {
    pub fn base(&self) -> &BaseCdf {
        &self.base
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Set when `α < 1`: the formula then exceeds `min` and is not a t-norm.
    pub fn warning(&self) -> Option<&str> {
        self.warning.as_deref()
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        // the formula is silent at the endpoints; extend by the t-norm boundary conditions
        if x >= 1.0 {
            return y.clamp(0.0, 1.0);
        }
        if y >= 1.0 {
            return x.clamp(0.0, 1.0);
        }
        if x <= 0.0 || y <= 0.0 {
            return 0.0;
        }
        self.eval_levels(self.base.quantile(x), self.base.quantile(y))
    }

    /// `T_G(G(u), G(v))` from the levels `u, v ∈ [0, ∞]`, avoiding the rounding
    /// of `G(u)` to `1` for large `u`.
    pub fn eval_levels(&self, u: f64, v: f64) -> f64 {
        if u.is_infinite() {
            return self.base.eval(v);
        }
        if v.is_infinite() {
            return self.base.eval(u);
        }
        if u <= 0.0 || v <= 0.0 {
            return 0.0;
        }
        let e = 1.0 / (1.0 - self.alpha);
        let w = math::powf(math::powf(u, e) + math::powf(v, e), 1.0 - self.alpha);
        self.base.eval(w)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TNorm {
    /// `min(x, y)`.
    M,
    Product,
    /// `max(x + y − 1, 0)`.
    Lukasiewicz,
    /// Drastic product: `min(x, y)` if `max(x, y) = 1`, else `0`.
    Z,
    TG(TgNorm),
    Custom(CustomOp),
}

/// Build `T_G`.
///
/// `G` must be continuous, strictly increasing and in `D⁺` without reaching 1,
/// so that `G⁻¹` is a bijection `[0, 1) → [0, ∞)`; among the built-in bases
/// this is `Exponential`. `α < 1` is accepted but flagged.
pub fn make_tg(base: BaseCdf, alpha: f64) -> Result<TNorm> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("alpha {alpha} must be > 0")));
    }
    if alpha == 1.0 {
        return Err(Error::InvalidArgument("alpha = 1 makes the exponent 1/(1-alpha) undefined".into()));
    }
    if !(base.is_strictly_increasing() && base.tail() == 1.0) {
        return Err(Error::NotInClass(format!(
            "{base:?} is not a strictly increasing continuous distribution function with limit 1"
        )));
    }
    let warning = (alpha < 1.0).then(|| {
        String::from("alpha < 1: T_G(x, y) exceeds min(x, y), so it is not a t-norm; axioms reported by sampling")
    });
    Ok(TNorm::TG(TgNorm { base, alpha, warning }))
}

impl TNorm {
    pub fn custom(name: impl Into<String>, op: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> TNorm {
        TNorm::Custom(CustomOp::new(name, op))
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            TNorm::M => x.min(y),
            TNorm::Product => x * y,
            TNorm::Lukasiewicz => (x + y - 1.0).max(0.0),
            TNorm::Z => {
                if x >= 1.0 {
                    y
                } else if y >= 1.0 {
                    x
                } else {
                    0.0
                }
            }
            TNorm::TG(t) => t.eval(x, y),
            TNorm::Custom(c) => c.eval(x, y),
        }
    }

    pub fn dual(&self) -> TConorm {
        TConorm(self.clone())
    }

    pub fn name(&self) -> String {
        match self {
            TNorm::M => "M".into(),
            TNorm::Product => "product".into(),
            TNorm::Lukasiewicz => "lukasiewicz".into(),
            TNorm::Z => "Z".into(),
            TNorm::TG(t) => format!("TG({:?}, {})", t.base, t.alpha),
            TNorm::Custom(c) => c.name.clone(),
        }
    }
}

/// `T*(x, y) = 1 − T(1 − x, 1 − y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TConorm(pub TNorm);

impl TConorm {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        1.0 - self.0.eval(1.0 - x, 1.0 - y)
    }

    pub fn dual(&self) -> TNorm {
        self.0.clone()
    }

    pub fn tnorm(&self) -> &TNorm {
        &self.0
    }
}

/// Binary operations on `[0, ∞]` that replace `+` in the constraint of a convolution.
#[derive(Clone, Debug, PartialEq)]
pub enum LOp {
    Sum,
    /// `(x^{1/α} + y^{1/α})^α`.
    PowerSum(f64),
    /// `φ⁻¹(φ(x) + φ(y))` for a bijective `φ`.
    FromPhi(PhiMap),
}

impl LOp {
    pub fn power_sum(alpha: f64) -> Result<LOp> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidArgument(format!("alpha {alpha} must be > 0")));
        }
        Ok(LOp::PowerSum(alpha))
    }

    pub fn from_phi(phi: PhiMap) -> Result<LOp> {
        if !phi.in_minf() {
            return Err(Error::NotInClass(format!("{phi:?} is not bijective (not in M_inf)")));
        }
        Ok(LOp::FromPhi(phi))
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        if x.is_infinite() || y.is_infinite() {
            return f64::INFINITY;
        }
        if y == 0.0 {
            return x;
        }
        if x == 0.0 {
            return y;
        }
        match self {
            LOp::Sum => x + y,
            LOp::PowerSum(a) => math::powf(math::powf(x, 1.0 / a) + math::powf(y, 1.0 / a), *a),
            LOp::FromPhi(phi) => phi.quasi_inverse().eval(phi.eval(x) + phi.eval(y)),
        }
    }

    /// The `v` with `L(u, v) = x`, for `0 ≤ u ≤ x`.
    pub fn section(&self, u: f64, x: f64) -> f64 {
        if u <= 0.0 {
            return x;
        }
        if u >= x {
            return 0.0;
        }
        match self {
            LOp::Sum => x - u,
            LOp::PowerSum(a) => {
                let d = math::powf(x, 1.0 / a) - math::powf(u, 1.0 / a);
                math::powf(d.max(0.0), *a)
            }
            LOp::FromPhi(phi) => phi.quasi_inverse().eval((phi.eval(x) - phi.eval(u)).max(0.0)),
        }
    }

    /// `L(s·x, s·y) = s·L(x, y)` for all `s > 0`.
    pub fn is_homogeneous(&self) -> bool {
        match self {
            LOp::Sum | LOp::PowerSum(_) => true,
            LOp::FromPhi(phi) => matches!(phi, PhiMap::Power(_) | PhiMap::Linear(_)),
        }
    }

    pub fn is_sum(&self) -> bool {
        match self {
            LOp::Sum => true,
            LOp::PowerSum(a) => *a == 1.0,
            LOp::FromPhi(phi) => matches!(phi, PhiMap::Linear(_)) || *phi == PhiMap::Power(1.0),
        }
    }
}

/// Sample t-norm axioms: commutativity, associativity, monotonicity, identity, `Z ≤ T ≤ M`.
pub fn check_tnorm_axioms(t: &TNorm, sample_count: usize, seed: u64) -> Report {
    let tol = Tolerances::EXACT;
    let mut rng = Sampler::new(seed);
    let mut xs = vec![0.0, 1.0, 0.5, 0.25, 0.75, 1e-6, 1.0 - 1e-6];
    xs.extend((0..sample_count.max(1)).map(|_| rng.unit()));
    let pick = |rng: &mut Sampler| xs[rng.index(xs.len())];

    let mut report = Report::new(format!("t-norm axioms for {}", t.name()));
    if let TNorm::TG(g) = t {
        if let Some(w) = g.warning() {
            report.note(w);
        }
    }

    let mut identity = Check::new("identity", tol);
    for &x in &xs {
        let v = math::abs(t.eval(x, 1.0) - x).max(math::abs(t.eval(1.0, x) - x));
        identity.observe(v, || witness(&[("x", &[x]), ("y", &[1.0])]));
    }
    identity.finish();

    let mut comm = Check::new("commutativity", tol);
    let mut assoc = Check::new("associativity", tol);
    let mut mono = Check::new("monotonicity", tol);
    let mut bounds = Check::new("bounded by Z and M", tol);
    for _ in 0..sample_count.max(1) {
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        comm.observe(math::abs(t.eval(x, y) - t.eval(y, x)), || witness(&[("x", &[x]), ("y", &[y])]));
        let l = t.eval(t.eval(x, y), z);
        let r = t.eval(x, t.eval(y, z));
        assoc.observe(math::abs(l - r), || witness(&[("x", &[x]), ("y", &[y]), ("z", &[z])]));
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        let drop = t.eval(lo, z) - t.eval(hi, z);
        mono.observe(drop.max(0.0), || witness(&[("x", &[lo]), ("x2", &[hi]), ("y", &[z])]));
        let v = t.eval(x, y);
        let below = TNorm::Z.eval(x, y) - v;
        let above = v - x.min(y);
        bounds.observe(below.max(above).max(0.0), || witness(&[("x", &[x]), ("y", &[y])]));
    }
    for c in [&mut comm, &mut assoc, &mut mono, &mut bounds] {
        c.finish();
    }
    report.push(comm);
    report.push(assoc);
    report.push(mono);
    report.push(identity);
    report.push(bounds);
    report
}

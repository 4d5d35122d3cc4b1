//! Probabilistic normed spaces over `ℝⁿ`.
//!
//! A [`PnSpace`] is a quadruple `(V, ν, τ, τ*)`: a finite-dimensional normed
//! space, a probabilistic norm `p ↦ ν_p`, and two triangle functions. The
//! checkers in the submodules sample vectors, scalars and evaluation points
//! from a seed and report the worst violation of each axiom.

mod axioms;
mod fnorm;
mod holder;
mod serstnev;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::ddf::{BaseCdf, Ddf};
use crate::error::{invalid, Error, Result};
use crate::math;
use crate::phi::PhiMap;
use crate::report::Tolerances;
use crate::tnorms::LOp;
use crate::triangle::TriangleFn;

pub use axioms::{better_than, check_pn_axioms, Betterness, Ordering};
pub use fnorm::{check_fnorm_axioms, fnorm_to_pn, pn_to_fnorm, Correspondence};
pub use holder::{holder_menger_check, holder_scalar_check, HolderOptions};
pub use serstnev::{
    beta, check_characterization_alpha, check_characterization_phi, check_serstnev, check_tau_m_upgrade,
    SerstnevKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    L1,
    L2,
    Linf,
}

/// `ℝⁿ` with one of the standard norms.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorSpace {
    pub dim: usize,
    pub norm: NormKind,
}

impl VectorSpace {
    pub fn new(dim: usize, norm: NormKind) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("dimension must be at least 1"));
        }
        Ok(Self { dim, norm })
    }

    pub fn norm(&self, p: &[f64]) -> f64 {
        match self.norm {
            NormKind::L1 => p.iter().map(|x| math::abs(*x)).sum(),
            NormKind::L2 => {
                // scaled to avoid overflow for large coordinates
                let m = p.iter().fold(0.0f64, |m, x| m.max(math::abs(*x)));
                if m == 0.0 || m.is_infinite() {
                    return m;
                }
                m * math::sqrt(p.iter().map(|x| (x / m) * (x / m)).sum())
            }
            NormKind::Linf => p.iter().fold(0.0f64, |m, x| m.max(math::abs(*x))),
        }
    }

    pub fn check(&self, p: &[f64]) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: p.len() });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(invalid("vector coordinates must be finite"));
        }
        Ok(())
    }

    pub fn zero(&self) -> Vec<f64> {
        alloc::vec![0.0; self.dim]
    }
}

type VecFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A user-supplied functional on `ℝⁿ`.
#[derive(Clone)]
pub struct CustomFNorm {
    pub name: String,
    g: VecFn,
}

impl CustomFNorm {
    pub fn new(name: impl Into<String>, g: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self { name: name.into(), g: Arc::new(g) }
    }
}

impl fmt::Debug for CustomFNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomFNorm({})", self.name)
    }
}

impl PartialEq for CustomFNorm {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.g, &other.g)
    }
}

/// Candidate F-norms `g : V → ℝ⁺`.
#[derive(Clone, Debug, PartialEq)]
pub enum FNorm {
    /// `‖p‖`.
    PlainNorm,
    /// `‖p‖^α`; subadditive only for `α ≤ 1`.
    NormPower(f64),
    /// `‖p‖ / (a + ‖p‖)`.
    NormRatio(f64),
    Custom(CustomFNorm),
}

impl FNorm {
    pub fn norm_power(alpha: f64) -> Result<FNorm> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(invalid(format!("exponent {alpha} must be > 0")));
        }
        Ok(FNorm::NormPower(alpha))
    }

    pub fn norm_ratio(a: f64) -> Result<FNorm> {
        if !(a.is_finite() && a > 0.0) {
            return Err(invalid(format!("ratio constant {a} must be > 0")));
        }
        Ok(FNorm::NormRatio(a))
    }

    pub fn eval(&self, space: &VectorSpace, p: &[f64]) -> f64 {
        match self {
            FNorm::Custom(c) => (c.g)(p),
            radial => radial.of_norm(space.norm(p)).expect("radial variant"),
        }
    }

    /// `g` as a function of `‖p‖` when it only depends on the norm.
    pub fn of_norm(&self, n: f64) -> Option<f64> {
        match self {
            FNorm::PlainNorm => Some(n),
            FNorm::NormPower(a) => Some(if n.is_infinite() { n } else { math::powf(n, *a) }),
            FNorm::NormRatio(a) => Some(if n.is_infinite() { 1.0 } else { n / (a + n) }),
            FNorm::Custom(_) => None,
        }
    }

    /// Whether `g(λp) = |λ| g(p)`, known analytically.
    pub fn is_homogeneous(&self) -> Option<bool> {
        match self {
            FNorm::PlainNorm => Some(true),
            FNorm::NormPower(a) => Some(*a == 1.0),
            FNorm::NormRatio(_) => Some(false),
            FNorm::Custom(_) => None,
        }
    }
}

/// The probabilistic norm `p ↦ ν_p`.
#[derive(Clone, Debug, PartialEq)]
pub enum ProbNorm {
    /// `ν_p(x) = G(x / ‖p‖)`.
    Simple(BaseCdf),
    /// `ν_p(x) = G(x / ‖p‖^α)`.
    AlphaSimple { base: BaseCdf, alpha: f64 },
    /// `ν_p = ε_{g(p)}`.
    EpsOfG(FNorm),
    /// `ν'_p = ν_p ∘ φ`.
    Transformed { base: Box<ProbNorm>, phi: PhiMap },
}

impl ProbNorm {
    pub fn alpha_simple(base: BaseCdf, alpha: f64) -> Result<ProbNorm> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(invalid(format!("alpha {alpha} must be > 0")));
        }
        Ok(ProbNorm::AlphaSimple { base, alpha })
    }

    /// `ν_p`; `ν_θ = ε_0` for every variant.
    pub fn nu(&self, space: &VectorSpace, p: &[f64]) -> Ddf {
        let n = space.norm(p);
        if n == 0.0 {
            return match self {
                ProbNorm::EpsOfG(g) => Ddf::Step(g.eval(space, p).max(0.0)),
                _ => Ddf::eps0(),
            };
        }
        match self {
            ProbNorm::Simple(g) => Ddf::Scaled { base: g.clone(), scale: n },
            ProbNorm::AlphaSimple { base, alpha } => Ddf::Scaled { base: base.clone(), scale: math::powf(n, *alpha) },
            ProbNorm::EpsOfG(g) => Ddf::Step(g.eval(space, p).max(0.0)),
            ProbNorm::Transformed { base, phi } => base.nu(space, p).compose(phi),
        }
    }

    pub fn transformed(&self, phi: PhiMap) -> ProbNorm {
        if phi == PhiMap::identity() {
            return self.clone();
        }
        ProbNorm::Transformed { base: Box::new(self.clone()), phi }
    }

    /// A map `φ` for which the closed form satisfies the φ-Šerstnev condition.
    pub fn serstnev_phi(&self) -> Option<PhiMap> {
        match self {
            ProbNorm::Simple(_) => Some(PhiMap::identity()),
            ProbNorm::AlphaSimple { alpha, .. } => Some(PhiMap::Power(*alpha)),
            ProbNorm::EpsOfG(FNorm::PlainNorm) => Some(PhiMap::identity()),
            ProbNorm::EpsOfG(FNorm::NormPower(a)) => Some(PhiMap::Power(*a)),
            ProbNorm::EpsOfG(_) => None,
            ProbNorm::Transformed { base, phi } => {
                if !phi.in_minf() {
                    return None;
                }
                base.serstnev_phi()?.then_after(phi)
            }
        }
    }

    /// The F-norm behind an `EpsOfG` norm.
    pub fn as_fnorm(&self) -> Option<&FNorm> {
        match self {
            ProbNorm::EpsOfG(g) => Some(g),
            _ => None,
        }
    }
}

/// `(V, ν, τ, τ*)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PnSpace {
    pub space: VectorSpace,
    pub norm: ProbNorm,
    pub tau: TriangleFn,
    pub tau_star: TriangleFn,
}

impl PnSpace {
    pub fn new(space: VectorSpace, norm: ProbNorm, tau: TriangleFn, tau_star: TriangleFn) -> Self {
        Self { space, norm, tau, tau_star }
    }

    /// The simple space `(V, G(x/‖p‖), τ_M, τ_M)`.
    pub fn simple(space: VectorSpace, base: BaseCdf) -> Self {
        Self::new(space, ProbNorm::Simple(base), TriangleFn::tau_m(), TriangleFn::tau_m())
    }

    /// The α-simple space with `(τ_{M,L}, τ_{M,L})`, `L(x, y) = (x^{1/α} + y^{1/α})^α`.
    pub fn alpha_simple(space: VectorSpace, base: BaseCdf, alpha: f64) -> Result<Self> {
        let norm = ProbNorm::alpha_simple(base, alpha)?;
        let tau = TriangleFn::tau_ml(LOp::power_sum(alpha)?);
        Ok(Self::new(space, norm, tau.clone(), tau))
    }

    /// `(V, ε_g, τ_M, M)`.
    pub fn eps_of_g(space: VectorSpace, g: FNorm) -> Self {
        Self::new(space, ProbNorm::EpsOfG(g), TriangleFn::tau_m(), TriangleFn::PointwiseM)
    }

    pub fn nu(&self, p: &[f64]) -> Result<Ddf> {
        self.space.check(p)?;
        Ok(self.norm.nu(&self.space, p))
    }

    pub(crate) fn nu_unchecked(&self, p: &[f64]) -> Ddf {
        self.norm.nu(&self.space, p)
    }

    pub fn with_triangles(&self, tau: TriangleFn, tau_star: TriangleFn) -> Self {
        Self::new(self.space.clone(), self.norm.clone(), tau, tau_star)
    }
}

/// Sample size, seed and tolerances shared by the checkers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckParams {
    pub samples: usize,
    pub seed: u64,
    pub tol: Tolerances,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self { samples: 50, seed: 0, tol: Tolerances::default() }
    }
}

impl CheckParams {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed, tol: Tolerances::default() }
    }
}

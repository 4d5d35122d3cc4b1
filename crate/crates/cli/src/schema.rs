//! The JSON space-spec file and its translation into core objects.

use anyhow::{anyhow, bail, Context, Result};
use pnkit_core::phi::transform_space;
use pnkit_core::tnorms::make_tg;
use pnkit_core::{
    BaseCdf, CheckParams, Ddf, FNorm, LOp, NormKind, PhiMap, PnSpace, SetSpec, TNorm, Tolerances,
    TriangleFn, VectorSpace,
};
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub space: SpaceDesc,
    /// Second structure for the `better` suite, on the same `ν`.
    #[serde(default)]
    pub compare: Option<SpaceDesc>,
    #[serde(default)]
    pub phi: Option<PhiDesc>,
    #[serde(default)]
    pub serstnev: Option<SerstnevDesc>,
    #[serde(default)]
    pub fnorm: Option<FNormDesc>,
    #[serde(default)]
    pub sets: Vec<SetSpec>,
    /// Two d.d.f.s for `curves --what tau`.
    #[serde(default)]
    pub pair: Option<[DdfDesc; 2]>,
    #[serde(default)]
    pub point: Option<Vec<f64>>,
    #[serde(default)]
    pub grid: Option<GridDesc>,
    #[serde(default)]
    pub params: ParamsDesc,
    #[serde(default)]
    pub bounds: BoundsDesc,
    #[serde(default)]
    pub holder: HolderDesc,
    #[serde(default)]
    pub ks: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDesc {
    pub dim: usize,
    #[serde(default = "default_norm")]
    pub norm: NormDesc,
    pub prob_norm: ProbNormDesc,
    #[serde(default)]
    pub tau: Option<TriangleDesc>,
    #[serde(default)]
    pub tau_star: Option<TriangleDesc>,
}

fn default_norm() -> NormDesc {
    NormDesc::L2
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormDesc {
    L1,
    L2,
    Linf,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseDesc {
    Exponential,
    UniformUnit,
    HalfExponential,
    Custom { points: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ProbNormDesc {
    Simple { base: BaseDesc },
    AlphaSimple { base: BaseDesc, alpha: f64 },
    EpsOfG(FNormDesc),
    /// The φ-transform of a space; its triangle functions are transformed too.
    Transformed { of: Box<ProbNormDesc>, phi: PhiDesc },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FNormDesc {
    PlainNorm,
    NormPower(f64),
    NormRatio(f64),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PhiDesc {
    Identity,
    Power(f64),
    Linear(f64),
    Capped(f64),
    Custom { points: Vec<(f64, f64)>, tail_slope: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TNormDesc {
    M,
    Product,
    Lukasiewicz,
    Z,
    Tg { base: BaseDesc, alpha: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum LOpDesc {
    Sum,
    PowerSum(f64),
    FromPhi(PhiDesc),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TriangleDesc {
    TauT(TNormDesc),
    TauTStar(TNormDesc),
    TauTl { tnorm: TNormDesc, op: LOpDesc },
    TauTStarL { tnorm: TNormDesc, op: LOpDesc },
    PointwiseM,
    PhiTransformed { inner: Box<TriangleDesc>, phi: PhiDesc },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DdfDesc {
    /// `ε_a`; `null` is `ε_∞`.
    Step(Option<f64>),
    Scaled { base: BaseDesc, scale: f64 },
    Knots(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SerstnevDesc {
    Plain,
    Alpha(f64),
    Phi(PhiDesc),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDesc {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Default for GridDesc {
    fn default() -> Self {
        Self { start: 0.0, stop: 10.0, count: 101 }
    }
}

impl GridDesc {
    pub fn points(&self) -> Result<Vec<f64>> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.start >= 0.0 && self.stop >= self.start) {
            bail!("grid must satisfy 0 <= start <= stop < inf");
        }
        Ok(match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            n => (0..n).map(|i| self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64).collect(),
        })
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDesc {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub tol: Option<TolDesc>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolDesc {
    #[serde(default)]
    pub exact: Option<f64>,
    #[serde(default)]
    pub grid: Option<f64>,
    #[serde(default)]
    pub metric: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDesc {
    #[serde(default = "default_max_n")]
    pub max_n: u32,
    #[serde(default = "default_max_k")]
    pub max_k: u32,
}

fn default_max_n() -> u32 {
    64
}

fn default_max_k() -> u32 {
    1 << 20
}

impl Default for BoundsDesc {
    fn default() -> Self {
        Self { max_n: default_max_n(), max_k: default_max_k() }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HolderDesc {
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    #[serde(default = "default_pairs")]
    pub pairs: usize,
    #[serde(default = "default_true")]
    pub axioms: bool,
}

fn default_grid_points() -> usize {
    512
}

fn default_pairs() -> usize {
    50
}

fn default_true() -> bool {
    true
}

impl Default for HolderDesc {
    fn default() -> Self {
        Self { grid_points: default_grid_points(), pairs: default_pairs(), axioms: true }
    }
}

pub fn load(path: &Path) -> Result<SpecFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Overrides from the command line; `None` falls back to the spec file.
#[derive(Debug, Default, Clone, Copy)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
}

impl SpecFile {
    /// Seed order: flag, spec file, `PNKIT_SEED`, 0.
    pub fn params(&self, o: &Overrides) -> Result<CheckParams> {
        let env_seed = match std::env::var("PNKIT_SEED") {
            Ok(v) => Some(v.trim().parse::<u64>().map_err(|_| anyhow!("PNKIT_SEED={v:?} is not an unsigned integer"))?),
            Err(_) => None,
        };
        let seed = o.seed.or(self.params.seed).or(env_seed).unwrap_or(0);
        let samples = o.samples.or(self.params.samples).unwrap_or(50);
        if samples == 0 {
            bail!("sample count must be positive");
        }
        let mut tol = Tolerances::default();
        if let Some(t) = &self.params.tol {
            tol.exact = t.exact.unwrap_or(tol.exact);
            tol.grid = t.grid.unwrap_or(tol.grid);
            tol.metric = t.metric.unwrap_or(tol.metric);
        }
        if let Some(t) = o.tol {
            tol.exact = t;
        }
        for v in [tol.exact, tol.grid, tol.metric] {
            if !(v.is_finite() && v >= 0.0) {
                bail!("tolerance {v} must be finite and >= 0");
            }
        }
        Ok(CheckParams { samples, seed, tol })
    }

    pub fn grid(&self) -> Result<Vec<f64>> {
        self.grid.unwrap_or_default().points()
    }
}

impl BaseDesc {
    pub fn build(&self) -> Result<BaseCdf> {
        Ok(match self {
            BaseDesc::Exponential => BaseCdf::Exponential,
            BaseDesc::UniformUnit => BaseCdf::UniformUnit,
            BaseDesc::HalfExponential => BaseCdf::HalfExponential,
            BaseDesc::Custom { points } => BaseCdf::custom(points.clone())?,
        })
    }
}

impl FNormDesc {
    pub fn build(&self) -> Result<FNorm> {
        Ok(match self {
            FNormDesc::PlainNorm => FNorm::PlainNorm,
            FNormDesc::NormPower(a) => FNorm::norm_power(*a)?,
            FNormDesc::NormRatio(a) => FNorm::norm_ratio(*a)?,
        })
    }
}

impl PhiDesc {
    pub fn build(&self) -> Result<PhiMap> {
        Ok(match self {
            PhiDesc::Identity => PhiMap::identity(),
            PhiDesc::Power(a) => PhiMap::power(*a)?,
            PhiDesc::Linear(k) => PhiMap::linear(*k)?,
            PhiDesc::Capped(b) => PhiMap::capped(*b)?,
            PhiDesc::Custom { points, tail_slope } => PhiMap::custom(points.clone(), *tail_slope)?,
        })
    }
}

impl TNormDesc {
    pub fn build(&self) -> Result<TNorm> {
        Ok(match self {
            TNormDesc::M => TNorm::M,
            TNormDesc::Product => TNorm::Product,
            TNormDesc::Lukasiewicz => TNorm::Lukasiewicz,
            TNormDesc::Z => TNorm::Z,
            TNormDesc::Tg { base, alpha } => make_tg(base.build()?, *alpha)?,
        })
    }
}

impl LOpDesc {
    pub fn build(&self) -> Result<LOp> {
        Ok(match self {
            LOpDesc::Sum => LOp::Sum,
            LOpDesc::PowerSum(a) => LOp::power_sum(*a)?,
            LOpDesc::FromPhi(p) => LOp::from_phi(p.build()?)?,
        })
    }
}

impl TriangleDesc {
    pub fn build(&self) -> Result<TriangleFn> {
        Ok(match self {
            TriangleDesc::TauT(t) => TriangleFn::TauT(t.build()?),
            TriangleDesc::TauTStar(t) => TriangleFn::TauTStar(t.build()?.dual()),
            TriangleDesc::TauTl { tnorm, op } => TriangleFn::TauTL(tnorm.build()?, op.build()?),
            TriangleDesc::TauTStarL { tnorm, op } => TriangleFn::TauTStarL(tnorm.build()?.dual(), op.build()?),
            TriangleDesc::PointwiseM => TriangleFn::PointwiseM,
            TriangleDesc::PhiTransformed { inner, phi } => inner.build()?.phi_transform(phi.build()?),
        })
    }
}

impl DdfDesc {
    pub fn build(&self) -> Result<Ddf> {
        Ok(match self {
            DdfDesc::Step(a) => Ddf::eps(a.unwrap_or(f64::INFINITY))?,
            DdfDesc::Scaled { base, scale } => Ddf::scaled(base.build()?, *scale)?,
            DdfDesc::Knots(points) => Ddf::knots(points.clone())?,
        })
    }
}

impl SerstnevDesc {
    pub fn build(&self) -> Result<pnkit_core::spaces::SerstnevKind> {
        use pnkit_core::spaces::SerstnevKind;
        Ok(match self {
            SerstnevDesc::Plain => SerstnevKind::Plain,
            SerstnevDesc::Alpha(a) => {
                if !(a.is_finite() && *a > 0.0) {
                    bail!("alpha {a} must be finite and > 0");
                }
                SerstnevKind::Alpha(*a)
            }
            SerstnevDesc::Phi(p) => SerstnevKind::Phi(p.build()?),
        })
    }
}

fn default_space(v: VectorSpace, norm: &ProbNormDesc) -> Result<PnSpace> {
    Ok(match norm {
        ProbNormDesc::Simple { base } => PnSpace::simple(v, base.build()?),
        ProbNormDesc::AlphaSimple { base, alpha } => PnSpace::alpha_simple(v, base.build()?, *alpha)?,
        ProbNormDesc::EpsOfG(g) => PnSpace::eps_of_g(v, g.build()?),
        ProbNormDesc::Transformed { of, phi } => transform_space(&default_space(v, of)?, &phi.build()?)?,
    })
}

impl SpaceDesc {
    /// Triangle functions default to the ones that come with `prob_norm`.
    pub fn build(&self) -> Result<PnSpace> {
        let norm = match self.norm {
            NormDesc::L1 => NormKind::L1,
            NormDesc::L2 => NormKind::L2,
            NormDesc::Linf => NormKind::Linf,
        };
        let s = default_space(VectorSpace::new(self.dim, norm)?, &self.prob_norm)?;
        let tau = match &self.tau {
            Some(t) => t.build()?,
            None => s.tau.clone(),
        };
        let tau_star = match &self.tau_star {
            Some(t) => t.build()?,
            None => s.tau_star.clone(),
        };
        Ok(s.with_triangles(tau, tau_star))
    }

    /// The base and exponent of an α-simple `ν`, with `α = 1` for simple spaces.
    pub fn alpha_simple_parts(&self) -> Option<(BaseDesc, f64)> {
        match &self.prob_norm {
            ProbNormDesc::Simple { base } => Some((base.clone(), 1.0)),
            ProbNormDesc::AlphaSimple { base, alpha } => Some((base.clone(), *alpha)),
            _ => None,
        }
    }
}

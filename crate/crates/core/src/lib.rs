//! Arithmetic for distance distribution functions and probabilistic normed spaces.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; randomised checkers take an explicit seed.
//!
//! * [`ddf`]: distance distribution functions, quasi-inverses and the Sibley metric.
//! * [`tnorms`]: t-norms, t-conorms and the operations `L` on `[0, ∞]`.
//! * [`triangle`]: triangle functions (sup/inf convolutions and the pointwise minimum).
//! * [`phi`]: monotone transforms and φ-transforms of functions and spaces.
//! * [`spaces`]: probabilistic norms over `ℝⁿ` and the axiom checkers.
//! * [`topology`]: strong neighbourhoods, probabilistic radius and boundedness.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod knots;
mod math;

pub mod ddf;
pub mod phi;
pub mod report;
pub mod sampling;
pub mod spaces;
pub mod tnorms;
pub mod topology;
pub mod triangle;

pub use ddf::{make_eps, BaseCdf, Ddf, QuasiInverse};
pub use error::{Error, Result};
pub use knots::MonotoneKnots;
pub use phi::PhiMap;
pub use report::{Check, Report, Tolerances};
pub use spaces::{CheckParams, FNorm, NormKind, PnSpace, ProbNorm, VectorSpace};
pub use tnorms::{LOp, TConorm, TNorm};
pub use topology::SetSpec;
pub use triangle::TriangleFn;

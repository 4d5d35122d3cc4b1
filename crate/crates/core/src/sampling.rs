//! Deterministic sample generation for the checkers.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::math;
use crate::spaces::VectorSpace;

/// Seeded source of vectors, scalars and evaluation points.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform on `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// `10^u` with `u` uniform between the exponents of `lo` and `hi`.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let (a, b) = (math::ln(lo), math::ln(hi));
        math::exp(self.uniform(a, b))
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn gaussian(&mut self) -> f64 {
        // Box-Muller; 1 - u keeps the log argument away from 0
        let u1 = 1.0 - self.unit();
        let u2 = self.unit();
        math::sqrt(-2.0 * math::ln(u1)) * math::cos(core::f64::consts::TAU * u2)
    }

    /// Random direction with Euclidean length one.
    pub fn direction(&mut self, dim: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..dim).map(|_| self.gaussian()).collect();
            let n = math::sqrt(v.iter().map(|x| x * x).sum());
            if n > 1e-12 {
                return v.into_iter().map(|x| x / n).collect();
            }
        }
    }

    /// Random direction scaled to a log-uniform Euclidean magnitude.
    pub fn vector_with_magnitude(&mut self, dim: usize, lo: f64, hi: f64) -> Vec<f64> {
        let m = self.log_uniform(lo, hi);
        self.direction(dim).into_iter().map(|x| x * m).collect()
    }

    /// Random vector whose norm in `space` is log-uniform on `[1e-3, 1e3]`.
    pub fn vector(&mut self, space: &VectorSpace) -> Vec<f64> {
        let d = self.direction(space.dim);
        let n = space.norm(&d);
        let m = self.log_uniform(1e-3, 1e3);
        d.into_iter().map(|x| x * m / n).collect()
    }

    /// `{0, 1/2, 1}` followed by `extra` uniform draws from `(0, 1)`.
    pub fn lambdas(&mut self, extra: usize) -> Vec<f64> {
        let mut out = vec![0.0, 0.5, 1.0];
        out.extend((0..extra).map(|_| self.uniform(1e-3, 1.0 - 1e-3)));
        out
    }

    /// Nonzero scalars: `±1/2`, `2`, `-1` plus log-uniform magnitudes with random sign.
    pub fn nonzero_scalars(&mut self, extra: usize) -> Vec<f64> {
        let mut out = vec![0.5, -0.5, 2.0, -1.0];
        for _ in 0..extra {
            let m = self.log_uniform(1e-2, 1e2);
            out.push(if self.unit() < 0.5 { -m } else { m });
        }
        out
    }
}

pub(crate) fn scale(p: &[f64], s: f64) -> Vec<f64> {
    p.iter().map(|x| x * s).collect()
}

pub(crate) fn add(p: &[f64], q: &[f64]) -> Vec<f64> {
    p.iter().zip(q).map(|(a, b)| a + b).collect()
}

pub(crate) fn sub(p: &[f64], q: &[f64]) -> Vec<f64> {
    p.iter().zip(q).map(|(a, b)| a - b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_given_seed() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..10 {
            assert_eq!(a.unit(), b.unit());
        }
        assert_ne!(Sampler::new(1).unit(), Sampler::new(2).unit());
    }

    #[test]
    fn lambdas_include_degenerate_points() {
        let l = Sampler::new(3).lambdas(5);
        assert_eq!(&l[..3], &[0.0, 0.5, 1.0]);
        assert!(l[3..].iter().all(|&x| x > 0.0 && x < 1.0));
    }
}

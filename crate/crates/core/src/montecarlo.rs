//! Seeded, worker-count-independent Monte Carlo averages over the uniform
//! simplex.
//!
//! Sample `k` is always drawn from `(seed, k)`. Samples are grouped into
//! fixed blocks of [`BLOCK`] indices, each block is reduced sequentially, and
//! block results are merged in index order, so the floating-point result
//! does not depend on how blocks are scheduled.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::simplex::SimplexSampler;

/// Samples per work unit.
pub const BLOCK: u64 = 1024;

/// Running count, mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Moments {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan et al. pairwise merge.
    pub fn merge(self, other: Self) -> Self {
        if other.count == 0 {
            return self;
        }
        if self.count == 0 {
            return other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / count as f64;
        Self {
            count,
            mean: self.mean + delta * w,
            m2: self.m2 + other.m2 + delta * delta * self.count as f64 * w,
        }
    }

    /// Sample variance (denominator `n − 1`).
    pub fn variance(&self) -> f64 {
        if self.count > 1 {
            (self.m2 / (self.count - 1) as f64).max(0.0)
        } else {
            0.0
        }
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Average of `f(λ)` over `samples` uniform draws `λ ∈ Δ_{dim−1}`.
///
/// `f` gets the sample and a scratch buffer of length `dim`. With
/// `workers = Some(w)` the work runs on a dedicated pool of `w` threads,
/// otherwise on rayon's global pool.
pub fn simplex_average<F>(
    dim: usize,
    samples: u64,
    seed: u64,
    workers: Option<usize>,
    f: F,
) -> Result<Moments>
where
    F: Fn(&[f64], &mut [f64]) -> Result<f64> + Sync,
{
    let sampler = SimplexSampler::new(dim, seed)?;
    let block = |start: u64| -> Result<Moments> {
        let end = (start + BLOCK).min(samples);
        let mut lambda = vec![0.0; dim];
        let mut scratch = vec![0.0; dim];
        let mut m = Moments::default();
        for k in start..end {
            sampler.fill_at(k, &mut lambda);
            m.push(f(&lambda, &mut scratch)?);
        }
        Ok(m)
    };
    let starts: Vec<u64> = (0..samples).step_by(BLOCK as usize).collect();
    let run = || -> Result<Vec<Moments>> { starts.par_iter().map(|&s| block(s)).collect() };
    let blocks = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::BadParameter(format!("cannot start {w} workers: {e}")))?
            .install(run)?,
        None => run()?,
    };
    Ok(blocks.into_iter().fold(Moments::default(), Moments::merge))
}

//! Probability vectors and counter-based uniform sampling on the simplex.

use std::ops::Index;

use rand::SeedableRng;
use rand_distr::{Distribution, Exp1};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::Serialize;

use crate::error::{Error, Result};

/// Entries this far below zero are clamped to zero on construction.
pub const NEGATIVE_TOL: f64 = 1e-12;

/// Allowed deviation of the entry sum from one.
pub const SUM_TOL: f64 = 1e-10;

/// A finite vector of nonnegative reals summing to one.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidProbability("empty vector".into()));
        }
        let mut entries = entries;
        for (i, x) in entries.iter_mut().enumerate() {
            if !x.is_finite() {
                return Err(Error::InvalidProbability(format!(
                    "entry {i} is not finite"
                )));
            }
            if *x < 0.0 {
                if *x < -NEGATIVE_TOL {
                    return Err(Error::InvalidProbability(format!(
                        "entry {i} is negative ({x:e})"
                    )));
                }
                *x = 0.0;
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidProbability(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        Ok(Self(entries))
    }

    /// The uniform distribution `(1/N, …, 1/N)`.
    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution needs n >= 1");
        Self(vec![1.0 / n as f64; n])
    }

    /// The point mass on index `k`.
    pub fn basis(n: usize, k: usize) -> Self {
        assert!(k < n, "basis index out of range");
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        Self(v)
    }

    /// Normalizes a nonnegative weight vector.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::InvalidProbability(format!("weights sum to {total}")));
        }
        Self::new(weights.iter().map(|w| w / total).collect())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }
}

impl Index<usize> for ProbabilityVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl AsRef<[f64]> for ProbabilityVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Keyed 64-bit mixer: a SplitMix64-style finalizer applied to the seed
/// offset by a Weyl step of the index, then re-keyed.
pub fn mix64(key: u64, index: u64) -> u64 {
    fn fmix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    let z = fmix(key.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15)));
    fmix(z ^ key.rotate_left(32))
}

/// Deterministic RNG for stream position `index` under `seed`.
pub(crate) fn stream_rng(seed: u64, index: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(mix64(seed, index))
}

/// Uniform sampler on the probability simplex `Δ_{N−1}`.
///
/// The `k`-th sample is a pure function of `(seed, k)`: it normalizes `N`
/// unit exponentials drawn from a generator keyed by `mix64(seed, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplexSampler {
    dim: usize,
    seed: u64,
    counter: u64,
}

impl SimplexSampler {
    pub fn new(dim: usize, seed: u64) -> Result<Self> {
        Self::at(dim, seed, 0)
    }

    /// A sampler positioned at `counter`.
    pub fn at(dim: usize, seed: u64, counter: u64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::BadParameter(format!(
                "simplex sampling needs dim >= 2, got {dim}"
            )));
        }
        Ok(Self { dim, seed, counter })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Draws the next sample and advances the counter by one.
    pub fn sample(&mut self) -> ProbabilityVector {
        let v = self.sample_at(self.counter);
        self.counter += 1;
        v
    }

    /// The sample at stream position `index`, without touching the counter.
    pub fn sample_at(&self, index: u64) -> ProbabilityVector {
        let mut out = vec![0.0; self.dim];
        self.fill_at(index, &mut out);
        ProbabilityVector(out)
    }

    /// Writes the sample at `index` into `out` (length must equal `dim`).
    pub fn fill_at(&self, index: u64, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.dim);
        let mut rng = stream_rng(self.seed, index);
        let mut total = 0.0;
        for x in out.iter_mut() {
            let e: f64 = Exp1.sample(&mut rng);
            *x = e;
            total += e;
        }
        for x in out.iter_mut() {
            *x /= total;
        }
    }
}

impl Iterator for SimplexSampler {
    type Item = ProbabilityVector;

    fn next(&mut self) -> Option<ProbabilityVector> {
        Some(self.sample())
    }
}

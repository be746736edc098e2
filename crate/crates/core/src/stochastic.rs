//! Column-stochastic and bi-stochastic matrices.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::simplex::{stream_rng, ProbabilityVector, SimplexSampler, NEGATIVE_TOL};

/// Tolerance on row and column sums.
pub const SUM_TOL: f64 = 1e-10;

/// Target residual for Sinkhorn scaling.
pub const SINKHORN_TOL: f64 = 1e-12;

/// Iteration cap for Sinkhorn scaling.
pub const SINKHORN_MAX_ITER: usize = 10_000;

/// A real nonnegative square matrix whose columns sum to one. The
/// `bi_stochastic` flag records whether the rows do as well.
#[derive(Clone, Debug, PartialEq)]
pub struct StochasticMatrix {
    n: usize,
    entries: Vec<f64>,
    bi_stochastic: bool,
}

impl StochasticMatrix {
    /// Validates a row-major matrix. Entries within `1e−12` below zero are
    /// clamped to zero.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotStochastic("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotStochastic(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Self::from_row_major(n, entries)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::from_row_major(n, entries)
    }

    pub(crate) fn from_row_major(n: usize, mut entries: Vec<f64>) -> Result<Self> {
        for (k, x) in entries.iter_mut().enumerate() {
            if !x.is_finite() || *x < -NEGATIVE_TOL {
                return Err(Error::NotStochastic(format!(
                    "entry ({}, {}) = {x} is not a nonnegative number",
                    k / n,
                    k % n
                )));
            }
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        for j in 0..n {
            let s: f64 = (0..n).map(|i| entries[i * n + j]).sum();
            if (s - 1.0).abs() > SUM_TOL {
                return Err(Error::NotStochastic(format!("column {j} sums to {s}")));
            }
        }
        let bi_stochastic = (0..n).all(|i| {
            let s: f64 = entries[i * n..(i + 1) * n].iter().sum();
            (s - 1.0).abs() <= SUM_TOL
        });
        Ok(Self {
            n,
            entries,
            bi_stochastic,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 }).expect("identity is stochastic")
    }

    /// `(1/N)·P`, the all-ones matrix scaled to be bi-stochastic.
    pub fn uniform(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1.0 / n as f64).expect("uniform matrix is stochastic")
    }

    /// The permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::BadParameter(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        Self::from_fn(n, |i, j| if perm[j] == i { 1.0 } else { 0.0 })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn is_bi_stochastic(&self) -> bool {
        self.bi_stochastic
    }

    pub fn require_bi_stochastic(&self) -> Result<()> {
        if self.bi_stochastic {
            Ok(())
        } else {
            let worst = (0..self.n)
                .map(|i| (self.row_slice(i).iter().sum::<f64>() - 1.0).abs())
                .fold(0.0, f64::max);
            Err(Error::NotBiStochastic(format!(
                "largest row-sum deviation is {worst:e}"
            )))
        }
    }

    fn row_slice(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Column `j` (the distribution `β_j`).
    pub fn column(&self, j: usize) -> ProbabilityVector {
        let col = (0..self.n).map(|i| self.get(i, j)).collect();
        ProbabilityVector::new(col).expect("validated column")
    }

    /// Row `i` as a distribution; needs row sums of one.
    pub fn row(&self, i: usize) -> Result<ProbabilityVector> {
        ProbabilityVector::new(self.row_slice(i).to_vec())
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row_slice(i).to_vec()).collect()
    }

    /// Transpose; only stochastic when the matrix is bi-stochastic.
    pub fn transpose(&self) -> Result<Self> {
        self.require_bi_stochastic()?;
        let n = self.n;
        Ok(Self {
            n,
            entries: (0..n * n).map(|k| self.get(k % n, k / n)).collect(),
            bi_stochastic: true,
        })
    }

    /// `Bλ`.
    pub fn apply(&self, lambda: &ProbabilityVector) -> Result<ProbabilityVector> {
        if lambda.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: lambda.dim(),
            });
        }
        let mut out = vec![0.0; self.n];
        self.apply_into(lambda.as_slice(), &mut out);
        ProbabilityVector::new(out)
    }

    /// `out = Bλ` without validation.
    pub(crate) fn apply_into(&self, lambda: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self
                .row_slice(i)
                .iter()
                .zip(lambda)
                .map(|(b, l)| b * l)
                .sum();
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Convex combination `Σ w_k B_k`.
    pub fn mixture(weights: &ProbabilityVector, parts: &[Self]) -> Result<Self> {
        if parts.is_empty() || parts.len() != weights.dim() {
            return Err(Error::DimensionMismatch {
                expected: weights.dim(),
                got: parts.len(),
            });
        }
        let n = parts[0].n;
        let mut entries = vec![0.0; n * n];
        for (w, part) in weights.iter().zip(parts) {
            if part.n != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: part.n,
                });
            }
            for (e, p) in entries.iter_mut().zip(&part.entries) {
                *e += w * p;
            }
        }
        Self::from_row_major(n, entries)
    }
}

/// Scales a nonnegative matrix to bi-stochastic form by alternating row and
/// column normalization.
pub fn sinkhorn(rows: &[Vec<f64>]) -> Result<StochasticMatrix> {
    let n = rows.len();
    let mut m: Vec<f64> = rows.iter().flatten().copied().collect();
    if m.len() != n * n || m.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::BadParameter(
            "Sinkhorn input must be a square nonnegative matrix".into(),
        ));
    }
    let mut residual = f64::INFINITY;
    for iteration in 0..SINKHORN_MAX_ITER {
        for i in 0..n {
            let s: f64 = m[i * n..(i + 1) * n].iter().sum();
            if s <= 0.0 {
                return Err(Error::SinkhornFailed {
                    iterations: iteration,
                    residual: f64::INFINITY,
                });
            }
            m[i * n..(i + 1) * n].iter_mut().for_each(|x| *x /= s);
        }
        for j in 0..n {
            let s: f64 = (0..n).map(|i| m[i * n + j]).sum();
            if s <= 0.0 {
                return Err(Error::SinkhornFailed {
                    iterations: iteration,
                    residual: f64::INFINITY,
                });
            }
            (0..n).for_each(|i| m[i * n + j] /= s);
        }
        // Columns are exact now; rows carry the remaining error.
        let row_err = (0..n)
            .map(|i| (m[i * n..(i + 1) * n].iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max);
        if row_err <= SINKHORN_TOL {
            return StochasticMatrix::from_row_major(n, m);
        }
        residual = row_err;
    }
    Err(Error::SinkhornFailed {
        iterations: SINKHORN_MAX_ITER,
        residual,
    })
}

/// A Sinkhorn-normalized matrix with i.i.d. `Uniform(0.05, 1)` entries.
pub fn random_sinkhorn(n: usize, seed: u64) -> Result<StochasticMatrix> {
    let mut rng = stream_rng(seed, 0x51_4e_4b);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(0.05..1.0)).collect())
        .collect();
    sinkhorn(&rows)
}

/// Convex mixture of `k` uniformly random permutation matrices with weights
/// drawn uniformly from the simplex.
pub fn random_permutation_mixture(n: usize, k: usize, seed: u64) -> Result<StochasticMatrix> {
    if k == 0 {
        return Err(Error::BadParameter("need at least one permutation".into()));
    }
    let mut rng = stream_rng(seed, 0x5045_524d);
    let perms = (0..k)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            StochasticMatrix::permutation(&p)
        })
        .collect::<Result<Vec<_>>>()?;
    let weights = if k == 1 {
        ProbabilityVector::basis(1, 0)
    } else {
        SimplexSampler::new(k, seed ^ 0x5745_4947)?.sample_at(0)
    };
    StochasticMatrix::mixture(&weights, &perms)
}

use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};
use rand_xoshiro::Xoshiro256PlusPlus;

use super::KrausChannel;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, UnitaryMatrix};
use crate::simplex::{mix64, stream_rng, ProbabilityVector, SimplexSampler};

// Stream tags so that different generators keyed by the same seed never
// share randomness.
const UNITARY_STREAM: u64 = 0x4841_4152;
const CHANNEL_STREAM: u64 = 0x554e_4954;
const STATE_STREAM: u64 = 0x5354_4154;

fn ginibre(n: usize, rng: &mut Xoshiro256PlusPlus) -> ComplexMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c(re * scale, im * scale)
    })
}

/// Haar-random unitary: Gram–Schmidt on the columns of a complex Gaussian
/// matrix. Gram–Schmidt yields the QR factor whose triangular part has a
/// positive real diagonal, which is the phase convention that makes the
/// result Haar distributed.
pub fn random_unitary(dim: usize, seed: u64) -> Result<UnitaryMatrix> {
    if dim < 2 {
        return Err(Error::BadParameter(format!(
            "random unitary needs dim >= 2, got {dim}"
        )));
    }
    let mut rng = stream_rng(seed, UNITARY_STREAM);
    let g = ginibre(dim, &mut rng);
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|j| (0..dim).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..dim {
        // Two passes of modified Gram–Schmidt keep orthogonality at roundoff.
        for _ in 0..2 {
            for k in 0..j {
                let proj: Complex64 = (0..dim).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                let (done, rest) = cols.split_at_mut(j);
                for (x, q) in rest[0].iter_mut().zip(&done[k]) {
                    *x -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    UnitaryMatrix::new(ComplexMatrix::from_fn(dim, |i, j| cols[j][i]))
}

/// Random mixture of `k` Haar unitaries, `Σ w_j Ad_{U_j}`, with weights
/// drawn uniformly from the simplex.
pub fn random_unital_channel(dim: usize, k: usize, seed: u64) -> Result<KrausChannel> {
    if k == 0 {
        return Err(Error::BadParameter("need at least one unitary".into()));
    }
    let key = mix64(seed, CHANNEL_STREAM);
    let unitaries = (0..k as u64)
        .map(|j| random_unitary(dim, mix64(key, j)))
        .collect::<Result<Vec<_>>>()?;
    let weights = if k == 1 {
        ProbabilityVector::basis(1, 0)
    } else {
        SimplexSampler::new(k, key)?.sample_at(u64::MAX)
    };
    KrausChannel::mixture_of_unitaries(&weights, &unitaries)
}

/// Random full-rank state `GG† / Tr(GG†)` from a complex Gaussian `G`.
pub fn random_density_matrix(dim: usize, seed: u64) -> DensityMatrix {
    let mut rng = stream_rng(seed, STATE_STREAM);
    let g = ginibre(dim, &mut rng);
    let gg = g.matmul(&g.adjoint());
    let tr = gg.trace().re;
    let mut m = gg.scale(c(1.0 / tr, 0.0));
    // Exact Hermiticity.
    for i in 0..dim {
        m[(i, i)] = c(m[(i, i)].re, 0.0);
        for j in (i + 1)..dim {
            m[(j, i)] = m[(i, j)].conj();
        }
    }
    DensityMatrix::from_matrix_unchecked(m)
}

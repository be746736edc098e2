//! Entropy functionals, all in nats.
//!
//! Subentropy is evaluated as minus the confluent divided difference of
//! `x^N ln x` over the entries of the distribution, so ties and zero entries
//! need no special casing.

use crate::density::{diagonal_distribution, DensityMatrix};
use crate::divdiff::{confluent_divided_difference, XPowLog};
use crate::error::{Error, Result};
use crate::linalg::{eigh, ComplexMatrix};
use crate::simplex::ProbabilityVector;
use crate::stochastic::StochasticMatrix;

/// Eigenvalues at or above this (and below zero) are treated as zero.
pub const EIGEN_CLAMP: f64 = -1e-9;

/// Support threshold for quantum relative entropy.
pub const SUPPORT_TOL: f64 = 1e-10;

#[inline]
fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `−Σ x ln x` over a slice, with `0 ln 0 = 0`.
pub(crate) fn shannon_slice(p: &[f64]) -> f64 {
    -p.iter().map(|&x| xlnx(x)).sum::<f64>()
}

/// Shannon entropy `H(p) = −Σ p_i ln p_i`.
pub fn shannon(p: &ProbabilityVector) -> f64 {
    shannon_slice(p.as_slice())
}

/// Relative entropy `H(p‖q) = Σ p_i (ln p_i − ln q_i)`.
pub fn relative_entropy(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: q.dim(),
        });
    }
    let mut total = 0.0;
    for (index, (&pi, &qi)) in p.iter().zip(q.iter()).enumerate() {
        if pi > 0.0 {
            if qi <= 0.0 {
                return Err(Error::SupportViolation { index, weight: pi });
            }
            total += pi * (pi.ln() - qi.ln());
        }
    }
    Ok(total.max(0.0))
}

fn clamp_spectrum(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|&w| {
            if (EIGEN_CLAMP..0.0).contains(&w) {
                0.0
            } else {
                w.min(1.0)
            }
        })
        .collect()
}

/// `S` of a Hermitian unit-trace matrix, skipping density validation.
pub(crate) fn von_neumann_matrix(m: &ComplexMatrix) -> Result<f64> {
    let spectrum = clamp_spectrum(&eigh(m)?.values);
    Ok(shannon_slice(&spectrum))
}

/// Von Neumann entropy `S(ρ) = −Tr ρ ln ρ`.
pub fn von_neumann(rho: &DensityMatrix) -> Result<f64> {
    von_neumann_matrix(rho.matrix())
}

/// Quantum relative entropy `S(ρ‖σ) = Tr ρ (ln ρ − ln σ)`.
///
/// `Tr ρ ln σ` is expanded in the eigenbasis of `σ`; eigenvalues of `σ`
/// below [`SUPPORT_TOL`] are outside its support, and `ρ` must put less
/// than that much weight there.
pub fn quantum_relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: sigma.dim(),
        });
    }
    let n = rho.dim();
    let neg_entropy = -von_neumann(rho)?;
    let es = sigma.eigh()?;
    let r = rho.matrix();
    let mut cross = 0.0;
    for k in 0..n {
        // ⟨v_k|ρ|v_k⟩
        let mut weight = 0.0;
        for i in 0..n {
            for j in 0..n {
                weight += (es.vectors[(i, k)].conj() * r[(i, j)] * es.vectors[(j, k)]).re;
            }
        }
        let w = es.values[k];
        if w <= SUPPORT_TOL {
            if weight > SUPPORT_TOL {
                return Err(Error::SupportViolation { index: k, weight });
            }
            continue;
        }
        cross += weight * w.ln();
    }
    Ok(neg_entropy - cross)
}

/// Subentropy `Q(λ) = −Σ_i λ_i^N ln λ_i / Π_{j≠i}(λ_i − λ_j)`, evaluated as
/// `−f[λ_1, …, λ_N]` for `f(x) = x^N ln x`.
pub fn subentropy(lambda: &ProbabilityVector) -> f64 {
    subentropy_slice(lambda.as_slice())
}

pub(crate) fn subentropy_slice(lambda: &[f64]) -> f64 {
    let f = XPowLog::new(lambda.len() as f64);
    // Zero entries number at most N − 1, so derivatives of order < N at zero
    // are all that is ever requested, and those exist.
    let dd =
        confluent_divided_difference(&f, lambda).expect("x^N ln x derivatives below order N exist");
    // 0.0 − dd rather than −dd so a vanishing value prints as 0, not −0.
    0.0 - dd
}

fn check_weights(b: &StochasticMatrix, p: &ProbabilityVector) -> Result<()> {
    if b.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            got: p.dim(),
        });
    }
    Ok(())
}

/// Weighted entropy `H_p(B) = Σ_j p_j H(β_j)` over the columns of `B`.
pub fn weighted_entropy(b: &StochasticMatrix, p: &ProbabilityVector) -> Result<f64> {
    check_weights(b, p)?;
    Ok((0..b.dim()).map(|j| p[j] * shannon(&b.column(j))).sum())
}

/// Weighted subentropy `Q_p(B) = Σ_j p_j Q(β_j)`.
pub fn weighted_subentropy(b: &StochasticMatrix, p: &ProbabilityVector) -> Result<f64> {
    check_weights(b, p)?;
    Ok((0..b.dim()).map(|j| p[j] * subentropy(&b.column(j))).sum())
}

/// `H(B)`: the column-entropy average with uniform weights.
pub fn matrix_entropy(b: &StochasticMatrix) -> f64 {
    weighted_entropy(b, &ProbabilityVector::uniform(b.dim())).expect("dimensions agree")
}

/// `Q(B)`: the column-subentropy average with uniform weights.
pub fn matrix_subentropy(b: &StochasticMatrix) -> f64 {
    weighted_subentropy(b, &ProbabilityVector::uniform(b.dim())).expect("dimensions agree")
}

/// `Q(Bᵀ)`, the uniform average of the subentropies of the rows of a
/// bi-stochastic `B`.
pub fn transpose_subentropy(b: &StochasticMatrix) -> Result<f64> {
    Ok(matrix_subentropy(&b.transpose()?))
}

/// `C_r(ρ) = S(ρ_diag) − S(ρ)`, the relative entropy of coherence in the
/// computational basis.
pub fn relative_entropy_of_coherence(rho: &DensityMatrix) -> Result<f64> {
    coherence_of_matrix(rho.matrix())
}

pub(crate) fn coherence_of_matrix(m: &ComplexMatrix) -> Result<f64> {
    if m.is_diagonal() {
        return Ok(0.0);
    }
    let diag = diagonal_distribution(m);
    Ok(shannon(&diag) - von_neumann_matrix(m)?)
}

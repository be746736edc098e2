//! Validated density matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c, eigh, ComplexMatrix, Eigh, STRUCTURE_TOL};
use crate::simplex::ProbabilityVector;

/// Smallest eigenvalue a density matrix may have.
pub const PSD_TOL: f64 = -1e-9;

/// A Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let herm = matrix.hermiticity_defect();
        if herm > STRUCTURE_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (max |A - A^H| = {herm:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STRUCTURE_TOL || tr.im.abs() > STRUCTURE_TOL {
            return Err(Error::InvalidDensity(format!("trace is {tr}, not 1")));
        }
        let min = eigh(&matrix)?.values.first().copied().unwrap_or(0.0);
        if min < PSD_TOL {
            return Err(Error::InvalidDensity(format!(
                "smallest eigenvalue {min:e} is negative"
            )));
        }
        Ok(Self(matrix))
    }

    /// The incoherent state `diag(λ)`.
    pub fn diagonal(lambda: &ProbabilityVector) -> Self {
        Self(ComplexMatrix::from_real_diagonal(lambda.as_slice()))
    }

    /// `I / N`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self::diagonal(&ProbabilityVector::uniform(n))
    }

    /// `|ψ⟩⟨ψ|` for a nonzero vector, normalized first.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if !(norm_sq > 0.0 && norm_sq.is_finite()) {
            return Err(Error::InvalidDensity("state vector has zero norm".into()));
        }
        let n = psi.len();
        Ok(Self(ComplexMatrix::from_fn(n, |i, j| {
            psi[i] * psi[j].conj() / norm_sq
        })))
    }

    /// `|k⟩⟨k|`.
    pub fn basis(n: usize, k: usize) -> Self {
        Self::diagonal(&ProbabilityVector::basis(n, k))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// Diagonal in the computational basis as a probability vector.
    pub fn diagonal_distribution(&self) -> ProbabilityVector {
        diagonal_distribution(&self.0)
    }

    pub fn eigh(&self) -> Result<Eigh> {
        eigh(&self.0)
    }

    /// Convex combination `w·self + (1−w)·other`.
    pub fn mix(&self, other: &Self, w: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::BadParameter(format!(
                "mixing weight {w} outside [0, 1]"
            )));
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(Self(
            self.0.scale(c(w, 0.0)).add(&other.0.scale(c(1.0 - w, 0.0))),
        ))
    }

    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self(matrix)
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Real diagonal of a trace-one Hermitian matrix, clamped and renormalized
/// into a probability vector.
pub(crate) fn diagonal_distribution(m: &ComplexMatrix) -> ProbabilityVector {
    let d: Vec<f64> = m.real_diagonal().into_iter().map(|x| x.max(0.0)).collect();
    ProbabilityVector::from_weights(&d).expect("density matrix has positive trace")
}

//! Quantum channels in Kraus form, their duals, and their Kraus matrices.

mod gates;
pub mod io;
mod random;

pub use gates::{make_gate, GateSpec};
pub use random::{random_density_matrix, random_unital_channel, random_unitary};

pub use crate::stochastic::StochasticMatrix;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, UnitaryMatrix, STRUCTURE_TOL};
use crate::simplex::ProbabilityVector;

/// A completely positive map `X ↦ Σ_μ M_μ X M_μ†` with no normalization
/// requirement. Duals of non-unital channels live here.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausMap {
    dim: usize,
    ops: Vec<ComplexMatrix>,
}

impl KrausMap {
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = ops
            .first()
            .map(ComplexMatrix::dim)
            .ok_or_else(|| Error::BadParameter("a Kraus map needs at least one operator".into()))?;
        if let Some(bad) = ops.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.dim(),
            });
        }
        Ok(Self { dim, ops })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// `Σ M X M†` for an arbitrary square `X`.
    pub fn apply_matrix(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim);
        for m in &self.ops {
            acc = acc.add(&m.matmul(x).matmul(&m.adjoint()));
        }
        acc
    }

    /// The adjoint map `Y ↦ Σ M† Y M`, so that `Tr[X Φ*(Y)] = Tr[Φ(X) Y]`.
    pub fn dual(&self) -> KrausMap {
        Self {
            dim: self.dim,
            ops: self.ops.iter().map(ComplexMatrix::adjoint).collect(),
        }
    }

    /// `max |Σ M†M − I|`.
    pub fn trace_preservation_defect(&self) -> f64 {
        self.gram(|m| m.adjoint().matmul(m))
    }

    /// `max |Σ MM† − I|`.
    pub fn unitality_defect(&self) -> f64 {
        self.gram(|m| m.matmul(&m.adjoint()))
    }

    fn gram(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> f64 {
        let mut acc = ComplexMatrix::zeros(self.dim);
        for m in &self.ops {
            acc = acc.add(&f(m));
        }
        acc.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// Row-major `Σ_μ M_μ ⋆ conj(M_μ)`, without stochasticity checks.
    pub fn schur_sum(&self) -> Vec<Vec<f64>> {
        let n = self.dim;
        let mut b = vec![vec![0.0; n]; n];
        for m in &self.ops {
            for (i, row) in m.rows().enumerate() {
                for (j, z) in row.iter().enumerate() {
                    b[i][j] += z.norm_sqr();
                }
            }
        }
        b
    }
}

/// A trace-preserving Kraus map, with its unitality certified at
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    map: KrausMap,
    unital: bool,
}

impl KrausChannel {
    /// Validates `max |Σ M†M − I| ≤ 1e−10` and records whether
    /// `max |Σ MM† − I| ≤ 1e−10`.
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        Self::try_from(KrausMap::new(ops)?)
    }

    pub fn from_unitary(u: &UnitaryMatrix) -> Self {
        Self {
            map: KrausMap {
                dim: u.dim(),
                ops: vec![u.matrix().clone()],
            },
            unital: true,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_unitary(&UnitaryMatrix::identity(n))
    }

    /// Complete dephasing, Kraus operators `{|i⟩⟨i|}`.
    pub fn dephasing(n: usize) -> Self {
        let ops = (0..n)
            .map(|k| {
                let mut m = ComplexMatrix::zeros(n);
                m[(k, k)] = c(1.0, 0.0);
                m
            })
            .collect();
        Self::new(ops).expect("dephasing is a channel")
    }

    /// Qubit amplitude damping with decay probability `gamma`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::BadParameter(format!(
                "gamma = {gamma} outside [0, 1]"
            )));
        }
        let k0 = ComplexMatrix::from_real_diagonal(&[1.0, (1.0 - gamma).sqrt()]);
        let mut k1 = ComplexMatrix::zeros(2);
        k1[(0, 1)] = c(gamma.sqrt(), 0.0);
        Self::new(vec![k0, k1])
    }

    /// `Σ_k w_k Ad_{U_k}` with Kraus operators `√w_k U_k`.
    pub fn mixture_of_unitaries(
        weights: &ProbabilityVector,
        unitaries: &[UnitaryMatrix],
    ) -> Result<Self> {
        if weights.dim() != unitaries.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.dim(),
                got: unitaries.len(),
            });
        }
        let ops = weights
            .iter()
            .zip(unitaries)
            .filter(|(&w, _)| w > 0.0)
            .map(|(&w, u)| u.matrix().scale(c(w.sqrt(), 0.0)))
            .collect();
        Self::new(ops)
    }

    pub fn dim(&self) -> usize {
        self.map.dim
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.map.ops
    }

    pub fn as_map(&self) -> &KrausMap {
        &self.map
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// True when the channel has a single Kraus operator, i.e. is `Ad_U`.
    pub fn is_unitary(&self) -> bool {
        self.map.ops.len() == 1
    }

    /// The unitary of a single-operator channel.
    pub fn as_unitary(&self) -> Option<UnitaryMatrix> {
        if self.is_unitary() {
            UnitaryMatrix::new(self.map.ops[0].clone()).ok()
        } else {
            None
        }
    }

    /// `Φ(ρ)`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = self.map.apply_matrix(rho.matrix())?;
        DensityMatrix::new(out)
    }

    /// The dual map `Φ*`; a channel again exactly when `Φ` is unital.
    pub fn dual(&self) -> KrausMap {
        self.map.dual()
    }

    /// The Kraus matrix `B(Φ) = Σ_μ M_μ ⋆ conj(M_μ)`; its columns give the
    /// diagonal action `p = B(Φ)λ` on incoherent inputs.
    pub fn kraus_matrix(&self) -> StochasticMatrix {
        StochasticMatrix::new(self.map.schur_sum())
            .expect("Kraus matrix of a trace-preserving map is stochastic")
    }
}

impl TryFrom<KrausMap> for KrausChannel {
    type Error = Error;

    fn try_from(map: KrausMap) -> Result<Self> {
        let tp = map.trace_preservation_defect();
        if tp > STRUCTURE_TOL || !tp.is_finite() {
            return Err(Error::NotTracePreserving(tp));
        }
        let unital = map.unitality_defect() <= STRUCTURE_TOL;
        Ok(Self { map, unital })
    }
}

impl From<&UnitaryMatrix> for KrausChannel {
    fn from(u: &UnitaryMatrix) -> Self {
        Self::from_unitary(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::SimplexSampler;

    fn hadamard() -> UnitaryMatrix {
        make_gate(&GateSpec::Hadamard).unwrap()
    }

    #[test]
    fn identity_channel_is_noop() {
        let rho = random_density_matrix(3, 5);
        let out = KrausChannel::identity(3).apply(&rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn hadamard_on_zero() {
        let out = KrausChannel::from_unitary(&hadamard())
            .apply(&DensityMatrix::basis(2, 0))
            .unwrap();
        let plus = ComplexMatrix::from_fn(2, |_, _| c(0.5, 0.0));
        assert!(out.matrix().max_abs_diff(&plus) < 1e-15);
    }

    #[test]
    fn dephasing_keeps_diagonal() {
        let rho = random_density_matrix(4, 9);
        let out = KrausChannel::dephasing(4).apply(&rho).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j {
                    rho.matrix()[(i, j)]
                } else {
                    c(0.0, 0.0)
                };
                assert!((out.matrix()[(i, j)] - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn apply_dimension_mismatch() {
        let err = KrausChannel::identity(2).apply(&DensityMatrix::maximally_mixed(3));
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rejects_non_trace_preserving() {
        let half = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(matches!(
            KrausChannel::new(vec![half]),
            Err(Error::NotTracePreserving(_))
        ));
    }

    #[test]
    fn unitality_flags() {
        assert!(KrausChannel::dephasing(3).is_unital());
        assert!(!KrausChannel::amplitude_damping(0.3).unwrap().is_unital());
        assert!(KrausChannel::from_unitary(&hadamard()).is_unital());
    }

    #[test]
    fn kraus_matrix_examples() {
        let b = KrausChannel::from_unitary(&hadamard()).kraus_matrix();
        assert!(b.max_abs_diff(&StochasticMatrix::uniform(2)) < 1e-15);

        let theta = 0.37f64;
        let b = KrausChannel::from_unitary(&make_gate(&GateSpec::Rotation(theta)).unwrap())
            .kraus_matrix();
        let (s2, c2) = (theta.sin().powi(2), theta.cos().powi(2));
        let expected = StochasticMatrix::new(vec![vec![c2, s2], vec![s2, c2]]).unwrap();
        assert!(b.max_abs_diff(&expected) < 1e-15);

        assert_eq!(
            KrausChannel::identity(3).kraus_matrix(),
            StochasticMatrix::identity(3)
        );

        let t = 0.3;
        let b = KrausChannel::from_unitary(&make_gate(&GateSpec::PartialSwap { t, d: 2 }).unwrap())
            .kraus_matrix();
        let expected = StochasticMatrix::new(vec![
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, t, 1.0 - t, 0.0],
            vec![0.0, 1.0 - t, t, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert!(b.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn kraus_matrix_flags_follow_unitality() {
        assert!(!KrausChannel::amplitude_damping(0.4)
            .unwrap()
            .kraus_matrix()
            .is_bi_stochastic());
        assert!(random_unital_channel(3, 3, 1)
            .unwrap()
            .kraus_matrix()
            .is_bi_stochastic());
    }

    #[test]
    fn diagonal_action() {
        let ch = KrausChannel::amplitude_damping(0.35).unwrap();
        let b = ch.kraus_matrix();
        let sampler = SimplexSampler::new(2, 4).unwrap();
        for k in 0..50 {
            let lambda = sampler.sample_at(k);
            let out = ch.apply(&DensityMatrix::diagonal(&lambda)).unwrap();
            let p = b.apply(&lambda).unwrap();
            for i in 0..2 {
                assert!((out.matrix()[(i, i)].re - p[i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn dual_of_unitary_is_adjoint() {
        let u = random_unitary(3, 17).unwrap();
        let d = KrausChannel::from_unitary(&u).dual();
        assert_eq!(d.ops()[0], u.adjoint().into_matrix());
    }

    #[test]
    fn dual_kraus_matrix_is_transpose() {
        let ch = random_unital_channel(3, 2, 5).unwrap();
        let bd = KrausChannel::try_from(ch.dual()).unwrap().kraus_matrix();
        assert!(bd.max_abs_diff(&ch.kraus_matrix().transpose().unwrap()) < 1e-15);

        // Non-unital: compare raw Schur sums.
        let ad = KrausChannel::amplitude_damping(0.2).unwrap();
        let raw = ad.dual().schur_sum();
        let b = ad.kraus_matrix();
        for (i, row) in raw.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert!((x - b.get(j, i)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn dual_of_trace_preserving_is_unital() {
        let ad = KrausChannel::amplitude_damping(0.6).unwrap();
        assert!(ad.dual().unitality_defect() < 1e-14);
        assert!(KrausChannel::try_from(ad.dual()).is_err());
    }
}

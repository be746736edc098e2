//! Coherence generating power.
//!
//! For a channel `Φ`, the CGP is the average relative entropy of coherence
//! of `Φ(Λ)` over incoherent inputs `Λ = diag(λ)` with `λ` uniform on the
//! simplex. For a unitary it has the closed form `Q(B(U)ᵀ)`, the mean
//! subentropy of the rows of `B(U) = U ⋆ conj(U)`; for unital channels the
//! same expression bounds it from above.

use serde::Serialize;

use crate::channels::{KrausChannel, StochasticMatrix};
use crate::density::DensityMatrix;
use crate::entropy::{coherence_of_matrix, shannon_slice, subentropy_slice, transpose_subentropy};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, UnitaryMatrix};
use crate::montecarlo::simplex_average;
use crate::special::max_subentropy;

/// Fewest samples `mc_cgp` accepts.
pub const MIN_SAMPLES: u64 = 100;

/// Absolute slack added to the statistical bound check.
pub const BOUND_ABS_TOL: f64 = 1e-8;

/// Number of standard errors allowed in the bound check.
pub const BOUND_SIGMAS: f64 = 3.0;

/// A Monte Carlo CGP estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CgpEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√samples`.
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    pub dim: usize,
}

/// Outcome of checking an estimate against the unital bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CgpBoundReport {
    pub estimate: CgpEstimate,
    pub bound: f64,
    pub satisfied: bool,
    /// `bound − mean`.
    pub slack: f64,
}

/// Exact CGP of `Ad_U`: the uniform average of the subentropies of the rows
/// of `B(U)`.
pub fn exact_cgp(u: &UnitaryMatrix) -> f64 {
    let n = u.dim();
    let b = u.matrix().abs_sq();
    b.chunks(n).map(subentropy_slice).sum::<f64>() / n as f64
}

/// `ln N − H_N + 1`, the largest CGP any `N × N` unitary attains.
pub fn max_cgp(n: usize) -> f64 {
    max_subentropy(n)
}

/// True iff every `|u_ij|²` is within `tol` of `1/N`, i.e. `B(U) = P/N`.
pub fn is_max_cgp_unitary(u: &UnitaryMatrix, tol: f64) -> bool {
    let target = 1.0 / u.dim() as f64;
    u.matrix()
        .abs_sq()
        .iter()
        .all(|&x| (x - target).abs() <= tol)
}

/// `Q(a, b)` for a two-outcome distribution, written so that it stays
/// accurate as `a → b`:
/// `Q = −[(a + b) ln a + b² (ln a − ln b)/(a − b)]`.
fn two_point_subentropy(a: f64, b: f64) -> f64 {
    let (a, b) = if a >= b { (a, b) } else { (b, a) };
    if b <= 0.0 {
        return if a > 0.0 && a < 1.0 { -a * a.ln() } else { 0.0 };
    }
    let log_slope = if a == b {
        1.0 / b
    } else if a - b <= 0.5 * a {
        ((a - b) / b).ln_1p() / (a - b)
    } else {
        (a.ln() - b.ln()) / (a - b)
    };
    let q = -((a + b) * a.ln() + b * b * log_slope);
    // Nonnegative; roundoff near the endpoints can give -0.0 or -1e-63.
    if q > 0.0 {
        q
    } else {
        0.0
    }
}

/// CGP of the real rotation `U_θ`:
/// `(sin⁴θ ln sin²θ − cos⁴θ ln cos²θ) / (cos²θ − sin²θ)`, with the
/// `cos²θ = sin²θ` points taken as limits.
pub fn cgp_curve_rotation(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    two_point_subentropy(c * c, s * s)
}

/// CGP of the two-qubit partial swap `U_t`:
/// `(t² ln t − (1−t)² ln(1−t)) / (2(1 − 2t))` on `[0, 1]`.
pub fn cgp_curve_partial_swap(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::BadParameter(format!("t = {t} outside [0, 1]")));
    }
    Ok(two_point_subentropy(t, 1.0 - t) / 2.0)
}

/// Upper bound `Q(B(Φ)ᵀ)` on the CGP of a unital channel.
pub fn unital_bound(channel: &KrausChannel) -> Result<f64> {
    if !channel.is_unital() {
        return Err(Error::NotUnital(channel.as_map().unitality_defect()));
    }
    transpose_subentropy(&channel.kraus_matrix())
}

/// How one sample's coherence is evaluated.
enum Integrand<'a> {
    /// `H(Bλ) − H(λ)`: unitaries preserve the spectrum, so no eigensolver.
    Unitary(StochasticMatrix),
    /// `C_r(Φ(diag λ))` through the eigensolver.
    General(&'a KrausChannel),
}

impl Integrand<'_> {
    fn eval(&self, lambda: &[f64], scratch: &mut [f64]) -> Result<f64> {
        match self {
            Self::Unitary(b) => {
                b.apply_into(lambda, scratch);
                Ok(shannon_slice(scratch) - shannon_slice(lambda))
            }
            Self::General(ch) => {
                let input = ComplexMatrix::from_real_diagonal(lambda);
                coherence_of_matrix(&ch.as_map().apply_unchecked(&input))
            }
        }
    }
}

/// Monte Carlo CGP over `samples` uniform simplex draws, using rayon's
/// global pool.
pub fn mc_cgp(channel: &KrausChannel, samples: u64, seed: u64) -> Result<CgpEstimate> {
    mc_cgp_with_workers(channel, samples, seed, None)
}

/// As [`mc_cgp`], on a dedicated pool of `workers` threads when given. The
/// result is bit-identical for every worker count.
pub fn mc_cgp_with_workers(
    channel: &KrausChannel,
    samples: u64,
    seed: u64,
    workers: Option<usize>,
) -> Result<CgpEstimate> {
    if samples < MIN_SAMPLES {
        return Err(Error::BadParameter(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let dim = channel.dim();
    let integrand = if channel.is_unitary() {
        Integrand::Unitary(channel.kraus_matrix())
    } else {
        Integrand::General(channel)
    };
    let total = simplex_average(dim, samples, seed, workers, |lambda, scratch| {
        integrand.eval(lambda, scratch)
    })?;
    Ok(CgpEstimate {
        mean: total.mean,
        std_error: total.std_error(),
        samples,
        seed,
        dim,
    })
}

/// Estimates the CGP of a unital channel and compares it with
/// [`unital_bound`]; satisfied iff `mean ≤ bound + 3·SE + 1e−8`.
pub fn check_unital_bound(
    channel: &KrausChannel,
    samples: u64,
    seed: u64,
) -> Result<CgpBoundReport> {
    let bound = unital_bound(channel)?;
    let estimate = mc_cgp(channel, samples, seed)?;
    let satisfied = estimate.mean <= bound + BOUND_SIGMAS * estimate.std_error + BOUND_ABS_TOL;
    Ok(CgpBoundReport {
        slack: bound - estimate.mean,
        estimate,
        bound,
        satisfied,
    })
}

/// `S(Φ(ρ)) − S(ρ) − S(ρ ‖ Φ*∘Φ(ρ))`, nonnegative for unital `Φ`.
pub fn entropy_gain_gap(channel: &KrausChannel, rho: &DensityMatrix) -> Result<f64> {
    use crate::entropy::{quantum_relative_entropy, von_neumann};
    if !channel.is_unital() {
        return Err(Error::NotUnital(channel.as_map().unitality_defect()));
    }
    let out = channel.apply(rho)?;
    let dual = KrausChannel::try_from(channel.dual())?;
    let back = dual.apply(&out)?;
    Ok(von_neumann(&out)? - von_neumann(rho)? - quantum_relative_entropy(rho, &back)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{make_gate, random_unitary, GateSpec};
    use crate::simplex::ProbabilityVector;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, LN_2};

    const MAX2: f64 = LN_2 - 0.5;

    fn gate(s: &str) -> UnitaryMatrix {
        make_gate(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_cgp(&UnitaryMatrix::identity(3)), 0.0);
        assert_eq!(exact_cgp(&gate("swap:2")), 0.0);
        assert!((exact_cgp(&gate("hadamard")) - MAX2).abs() < 1e-15);
        assert!((exact_cgp(&gate(&format!("rotation:{FRAC_PI_4}"))) - MAX2).abs() < 1e-15);
        for n in 2..=6 {
            let f = exact_cgp(&gate(&format!("fourier:{n}")));
            assert!((f - max_cgp(n)).abs() < 1e-13, "N = {n}");
        }
        let quarter = (2.0 * LN_2 - 1.0) / 4.0;
        assert!((exact_cgp(&gate("partial-swap:0.5")) - quarter).abs() < 1e-15);
        assert!((exact_cgp(&gate("sqrt-swap")) - quarter).abs() < 1e-15);
    }

    #[test]
    fn rotation_curve_examples() {
        assert_eq!(cgp_curve_rotation(0.0), 0.0);
        assert!((cgp_curve_rotation(FRAC_PI_4) - MAX2).abs() < 1e-15);
        // Q(1/4, 3/4) from the two-point formula, evaluated in extended precision.
        assert!((cgp_curve_rotation(FRAC_PI_3) - 0.150_355_536_368_267_2).abs() < 1e-14);
    }

    #[test]
    fn partial_swap_curve_examples() {
        assert_eq!(cgp_curve_partial_swap(0.0).unwrap(), 0.0);
        assert_eq!(cgp_curve_partial_swap(1.0).unwrap(), 0.0);
        let quarter = (2.0 * LN_2 - 1.0) / 4.0;
        assert!((cgp_curve_partial_swap(0.5).unwrap() - quarter).abs() < 1e-15);
        assert!(cgp_curve_partial_swap(1.5).is_err());
        assert!(cgp_curve_partial_swap(-0.1).is_err());
    }

    #[test]
    fn curves_match_theorem_near_ties() {
        for k in -20..=20 {
            let theta = FRAC_PI_4 + k as f64 * 1e-9;
            let via_gate = exact_cgp(&make_gate(&GateSpec::Rotation(theta)).unwrap());
            assert!(
                (cgp_curve_rotation(theta) - via_gate).abs() < 1e-12,
                "θ = {theta}"
            );
            let t = 0.5 + k as f64 * 3e-9;
            let via_gate = exact_cgp(&make_gate(&GateSpec::PartialSwap { t, d: 2 }).unwrap());
            assert!(
                (cgp_curve_partial_swap(t).unwrap() - via_gate).abs() < 1e-12,
                "t = {t}"
            );
        }
    }

    #[test]
    fn max_cgp_detection() {
        assert!(is_max_cgp_unitary(&gate("fourier:5"), 1e-12));
        assert!(is_max_cgp_unitary(
            &gate("max-cgp-qubit:0.3:1.1:-2.0"),
            1e-12
        ));
        assert!(!is_max_cgp_unitary(
            &gate("hadamard").kron(&UnitaryMatrix::identity(2)),
            1e-6
        ));
    }

    #[test]
    fn identity_estimate_is_exactly_zero() {
        let e = mc_cgp(&KrausChannel::identity(3), 5000, 1).unwrap();
        assert_eq!(e.mean, 0.0);
        assert_eq!(e.std_error, 0.0);
    }

    #[test]
    fn dephasing_generates_nothing() {
        let ch = KrausChannel::dephasing(3);
        let e = mc_cgp(&ch, 2000, 5).unwrap();
        assert_eq!(e.mean, 0.0);
        assert!(unital_bound(&ch).unwrap() >= e.mean);
    }

    #[test]
    fn too_few_samples() {
        assert!(mc_cgp(&KrausChannel::identity(2), 99, 0).is_err());
    }

    #[test]
    fn worker_count_does_not_change_bits() {
        let ch = crate::channels::random_unital_channel(3, 2, 8).unwrap();
        let a = mc_cgp_with_workers(&ch, 5000, 3, Some(1)).unwrap();
        let b = mc_cgp_with_workers(&ch, 5000, 3, Some(4)).unwrap();
        let c = mc_cgp_with_workers(&ch, 5000, 3, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn hadamard_estimate() {
        let e = mc_cgp(&KrausChannel::from_unitary(&gate("hadamard")), 100_000, 11).unwrap();
        assert!((e.mean - MAX2).abs() <= 4.0 * e.std_error, "{e:?}");
    }

    #[test]
    fn random_qutrit_estimate_matches_exact() {
        let u = random_unitary(3, 7).unwrap();
        let e = mc_cgp(&KrausChannel::from_unitary(&u), 100_000, 7).unwrap();
        assert!((e.mean - exact_cgp(&u)).abs() <= 4.0 * e.std_error, "{e:?}");
    }

    #[test]
    fn unital_bound_examples() {
        let h = gate("hadamard");
        let ad_h = KrausChannel::from_unitary(&h);
        assert!((unital_bound(&ad_h).unwrap() - MAX2).abs() < 1e-15);

        let half = ProbabilityVector::uniform(2);
        let mix =
            KrausChannel::mixture_of_unitaries(&half, &[UnitaryMatrix::identity(2), h]).unwrap();
        assert!((unital_bound(&mix).unwrap() - 0.150_355_536_368_267_2).abs() < 1e-14);

        let ad = KrausChannel::amplitude_damping(0.3).unwrap();
        assert!(matches!(unital_bound(&ad), Err(Error::NotUnital(_))));
    }

    #[test]
    fn bound_report_for_mixture() {
        let ch = crate::channels::random_unital_channel(2, 3, 21).unwrap();
        let r = check_unital_bound(&ch, 20_000, 2).unwrap();
        assert!(r.satisfied, "{r:?}");
    }

    #[test]
    fn entropy_gain_on_a_mixture() {
        let ch = crate::channels::random_unital_channel(3, 2, 4).unwrap();
        let rho = crate::channels::random_density_matrix(3, 4);
        assert!(entropy_gain_gap(&ch, &rho).unwrap() >= -1e-8);
    }
}

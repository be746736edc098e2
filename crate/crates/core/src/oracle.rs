//! Numerical evidence for the simplex integral identities behind the CGP
//! formulas.
//!
//! Every check produces an [`IdentityReport`]. Statistical checks compare a
//! closed form against a seeded Monte Carlo average and pass within four
//! standard errors; deterministic checks use a fixed absolute tolerance.

use rayon::prelude::*;
use serde::Serialize;

use crate::cgp::{mc_cgp, BOUND_ABS_TOL, BOUND_SIGMAS};
use crate::channels::{random_unital_channel, random_unitary, KrausChannel, StochasticMatrix};
use crate::divdiff::{confluent_divided_difference, quotient_divided_difference, Power};
use crate::entropy::{matrix_entropy, shannon_slice, subentropy};
use crate::error::{Error, Result};
use crate::montecarlo::{simplex_average, Moments};
use crate::simplex::{mix64, ProbabilityVector, SimplexSampler};
use crate::special::ln_gamma;
use crate::stochastic::{random_permutation_mixture, random_sinkhorn};

pub use crate::special::harmonic;

/// Standard errors allowed in statistical checks.
pub const MC_SIGMAS: f64 = 4.0;

/// Absolute floor added to statistical tolerances, for integrands that are
/// constant up to roundoff (standard error zero).
pub const MC_FLOOR: f64 = 1e-12;

/// Tolerance for `Σ_j p_j^N / Π_{i≠j}(p_j − p_i) = 1`.
pub const UNIT_SUM_TOL: f64 = 1e-9;

/// Tolerance for `Q(Bᵀ) ≤ H(B)`.
pub const Q_LE_H_TOL: f64 = 1e-10;

/// Tolerance for the derivative of `I_p` at one against central differences.
pub const DERIVATIVE_TOL: f64 = 1e-6;

/// Central-difference step in `α`.
pub const DERIVATIVE_STEP: f64 = 1e-4;

/// Minimum node gap for the distinct-node quotient checks.
pub const MIN_GAP: f64 = 1e-3;

/// How the two sides of a report were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedFormVsMc,
    ClosedFormVsClosedForm,
}

/// One verified identity or inequality.
///
/// For inequalities `lhs ≤ rhs`, `abs_diff` is the violation
/// `max(0, lhs − rhs)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    pub tolerance: f64,
    #[serde(skip)]
    pub method: Method,
    pub samples: u64,
    pub seed: u64,
    pub passed: bool,
}

impl IdentityReport {
    fn equality(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        method: Method,
        samples: u64,
        seed: u64,
    ) -> Self {
        let abs_diff = (lhs - rhs).abs();
        Self {
            name: name.into(),
            lhs,
            rhs,
            abs_diff,
            tolerance,
            method,
            samples,
            seed,
            passed: abs_diff <= tolerance,
        }
    }

    fn statistical(name: impl Into<String>, closed: f64, mc: Moments, seed: u64) -> Self {
        Self::equality(
            name,
            mc.mean,
            closed,
            MC_SIGMAS * mc.std_error() + MC_FLOOR,
            Method::ClosedFormVsMc,
            mc.count,
            seed,
        )
    }

    fn at_most(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        method: Method,
        samples: u64,
        seed: u64,
    ) -> Self {
        let abs_diff = (lhs - rhs).max(0.0);
        Self {
            name: name.into(),
            lhs,
            rhs,
            abs_diff,
            tolerance,
            method,
            samples,
            seed,
            passed: abs_diff <= tolerance,
        }
    }
}

/// `I_p(α) = ∫ (Σ_j p_j λ_j)^α dμ(λ)` in closed form:
/// `Γ(N)Γ(α+1)/Γ(α+N) · g[p_1, …, p_N]` with `g(x) = x^{α+N−1}`.
pub fn ip_alpha_closed(p: &ProbabilityVector, alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha <= -1.0 {
        return Err(Error::BadParameter(format!(
            "alpha = {alpha} must exceed -1"
        )));
    }
    let n = p.dim() as f64;
    let log_ratio = ln_gamma(n) + ln_gamma(alpha + 1.0) - ln_gamma(alpha + n);
    let dd = confluent_divided_difference(&Power::new(alpha + n - 1.0), p.as_slice())?;
    Ok(log_ratio.exp() * dd)
}

/// Monte Carlo estimate of `I_p(α)`.
pub fn ip_alpha_mc(p: &ProbabilityVector, alpha: f64, samples: u64, seed: u64) -> Result<Moments> {
    let w = p.as_slice();
    simplex_average(p.dim(), samples, seed, None, |l, _| {
        let dot: f64 = w.iter().zip(l).map(|(a, b)| a * b).sum();
        Ok(dot.powf(alpha))
    })
}

/// `I_p'(1) = −(H_N − 1 + Q(p)) / N`.
pub fn ip_prime_at_one(p: &ProbabilityVector) -> f64 {
    ip_prime_at_one_with(p, subentropy)
}

fn ip_prime_at_one_with(p: &ProbabilityVector, q: SubentropyFn) -> f64 {
    let n = p.dim();
    -(harmonic(n as u32) - 1.0 + q(p)) / n as f64
}

/// Central difference of [`ip_alpha_closed`] at `α = 1`.
pub fn ip_prime_numeric(p: &ProbabilityVector, step: f64) -> Result<f64> {
    Ok((ip_alpha_closed(p, 1.0 + step)? - ip_alpha_closed(p, 1.0 - step)?) / (2.0 * step))
}

/// `Σ_j p_j^N / Π_{i≠j}(p_j − p_i)` by the distinct-node quotient formula.
pub fn unit_sum(p: &ProbabilityVector) -> Result<f64> {
    quotient_divided_difference(&Power::new(p.dim() as f64), p.as_slice())
}

type SubentropyFn = fn(&ProbabilityVector) -> f64;

fn q_transpose_with(b: &StochasticMatrix, q: SubentropyFn) -> Result<f64> {
    let n = b.dim();
    let mut total = 0.0;
    for i in 0..n {
        total += q(&b.row(i)?);
    }
    Ok(total / n as f64)
}

/// `∫H(Bλ)dμ = H_N − 1 + Q(Bᵀ)` for bi-stochastic `B`.
pub fn verify_lemma_integral(
    b: &StochasticMatrix,
    samples: u64,
    seed: u64,
) -> Result<IdentityReport> {
    lemma_with(b, samples, seed, subentropy, "lemma_integral")
}

fn lemma_with(
    b: &StochasticMatrix,
    samples: u64,
    seed: u64,
    q: SubentropyFn,
    name: &str,
) -> Result<IdentityReport> {
    b.require_bi_stochastic()?;
    let n = b.dim();
    let closed = harmonic(n as u32) - 1.0 + q_transpose_with(b, q)?;
    let mc = simplex_average(n, samples, seed, None, |l, scratch| {
        b.apply_into(l, scratch);
        Ok(shannon_slice(scratch))
    })?;
    Ok(IdentityReport::statistical(name, closed, mc, seed))
}

/// `∫H_λ(B)dμ = H(B)`, the uniform column-entropy average.
pub fn verify_weighted_entropy_integral(
    b: &StochasticMatrix,
    samples: u64,
    seed: u64,
) -> Result<IdentityReport> {
    weighted_entropy_with(b, samples, seed, "weighted_entropy_integral")
}

fn weighted_entropy_with(
    b: &StochasticMatrix,
    samples: u64,
    seed: u64,
    name: &str,
) -> Result<IdentityReport> {
    b.require_bi_stochastic()?;
    let n = b.dim();
    let column_entropies: Vec<f64> = (0..n)
        .map(|j| shannon_slice(b.column(j).as_slice()))
        .collect();
    let closed = matrix_entropy(b);
    let mc = simplex_average(n, samples, seed, None, |l, _| {
        Ok(l.iter().zip(&column_entropies).map(|(w, h)| w * h).sum())
    })?;
    Ok(IdentityReport::statistical(name, closed, mc, seed))
}

/// `Q(Bᵀ) ≤ H(B)` for bi-stochastic `B`.
pub fn verify_q_le_h(b: &StochasticMatrix) -> Result<IdentityReport> {
    q_le_h_with(b, subentropy, "q_transpose_le_h")
}

fn q_le_h_with(b: &StochasticMatrix, q: SubentropyFn, name: &str) -> Result<IdentityReport> {
    b.require_bi_stochastic()?;
    Ok(IdentityReport::at_most(
        name,
        q_transpose_with(b, q)?,
        matrix_entropy(b),
        Q_LE_H_TOL,
        Method::ClosedFormVsClosedForm,
        0,
        0,
    ))
}

/// Battery settings.
#[derive(Clone, Copy, Debug)]
pub struct BatteryConfig {
    /// Monte Carlo samples per statistical check.
    pub samples: u64,
    /// Subentropy used by every closed form. Replacing it (for example with
    /// a sign-flipped version) is how the battery's failure path is tested.
    pub subentropy: SubentropyFn,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            samples: 100_000,
            subentropy,
        }
    }
}

/// Uniform simplex point whose entries are pairwise at least [`MIN_GAP`]
/// apart.
pub fn random_separated_point(n: usize, seed: u64) -> ProbabilityVector {
    let sampler = SimplexSampler::new(n, seed).expect("n >= 2");
    (0..)
        .map(|k| sampler.sample_at(k))
        .find(|p| {
            let mut s = p.as_slice().to_vec();
            s.sort_by(f64::total_cmp);
            s.windows(2).all(|w| w[1] - w[0] >= MIN_GAP)
        })
        .expect("the sampler is infinite")
}

type Check = Box<dyn Fn() -> Result<IdentityReport> + Send + Sync>;

fn checks(seed: u64, cfg: BatteryConfig) -> Vec<Check> {
    let samples = cfg.samples;
    let q = cfg.subentropy;
    let key = |tag: u64| mix64(seed, tag);
    let mut out: Vec<Check> = Vec::new();

    // ∫H(λ)dμ = H_N − 1.
    for n in 2..=5usize {
        let s = key(100 + n as u64);
        out.push(Box::new(move || {
            lemma_with(
                &StochasticMatrix::identity(n),
                samples,
                s,
                q,
                &format!("mean_entropy_n{n}"),
            )
        }));
    }

    // ∫H(Bλ)dμ = H_N − 1 + Q(Bᵀ) on three families of bi-stochastic B.
    let s = key(200);
    out.push(Box::new(move || {
        let u = random_unitary(3, s)?;
        let b = KrausChannel::from_unitary(&u).kraus_matrix();
        lemma_with(&b, samples, s, q, "lemma_integral_haar_n3")
    }));
    let s = key(201);
    out.push(Box::new(move || {
        let b = random_permutation_mixture(4, 3, s)?;
        lemma_with(&b, samples, s, q, "lemma_integral_permutations_n4")
    }));
    let s = key(202);
    out.push(Box::new(move || {
        let b = random_sinkhorn(4, s)?;
        lemma_with(&b, samples, s, q, "lemma_integral_sinkhorn_n4")
    }));

    // ∫H_λ(B)dμ = H(B).
    let s = key(300);
    out.push(Box::new(move || {
        weighted_entropy_with(
            &random_sinkhorn(4, s)?,
            samples,
            s,
            "weighted_entropy_integral_sinkhorn_n4",
        )
    }));
    let s = key(301);
    out.push(Box::new(move || {
        weighted_entropy_with(
            &random_permutation_mixture(3, 2, s)?,
            samples,
            s,
            "weighted_entropy_integral_permutations_n3",
        )
    }));

    // Q(Bᵀ) ≤ H(B) on 100 matrices; report the tightest case.
    let s = key(400);
    out.push(Box::new(move || {
        let mut worst: Option<IdentityReport> = None;
        for k in 0..100u64 {
            let n = 2 + (k % 4) as usize;
            let ks = mix64(s, k);
            let b = if k % 2 == 0 {
                random_sinkhorn(n, ks)?
            } else {
                random_permutation_mixture(n, 1 + (k % 3) as usize, ks)?
            };
            let r = q_le_h_with(&b, q, "q_transpose_le_h_x100")?;
            if worst.as_ref().is_none_or(|w| r.lhs - r.rhs > w.lhs - w.rhs) {
                worst = Some(IdentityReport { seed: ks, ..r });
            }
        }
        Ok(worst.expect("100 cases"))
    }));

    // Σ_j p_j^N / Π_{i≠j}(p_j − p_i) = 1 on 100 separated points.
    let s = key(500);
    out.push(Box::new(move || {
        let mut worst = IdentityReport::equality(
            "unit_sum_x100",
            1.0,
            1.0,
            UNIT_SUM_TOL,
            Method::ClosedFormVsClosedForm,
            0,
            s,
        );
        for k in 0..100u64 {
            let p = random_separated_point(2 + (k % 4) as usize, mix64(s, k));
            let r = IdentityReport::equality(
                "unit_sum_x100",
                unit_sum(&p)?,
                1.0,
                UNIT_SUM_TOL,
                Method::ClosedFormVsClosedForm,
                0,
                mix64(s, k),
            );
            if r.abs_diff > worst.abs_diff {
                worst = r;
            }
        }
        Ok(worst)
    }));

    // I_p(α) closed form against Monte Carlo.
    for (i, alpha) in [0.5, 1.0, 2.0, 3.0].into_iter().enumerate() {
        let s = key(600 + i as u64);
        out.push(Box::new(move || {
            let p = SimplexSampler::new(2 + i, s)?.sample_at(0);
            let closed = ip_alpha_closed(&p, alpha)?;
            let mc = ip_alpha_mc(&p, alpha, samples, s)?;
            Ok(IdentityReport::statistical(
                format!("ip_alpha_{alpha}_n{}", 2 + i),
                closed,
                mc,
                s,
            ))
        }));
    }

    // I_p'(1) against central differences.
    for n in 2..=5usize {
        let s = key(700 + n as u64);
        out.push(Box::new(move || {
            let p = SimplexSampler::new(n, s)?.sample_at(0);
            Ok(IdentityReport::equality(
                format!("ip_prime_at_one_n{n}"),
                ip_prime_numeric(&p, DERIVATIVE_STEP)?,
                ip_prime_at_one_with(&p, q),
                DERIVATIVE_TOL,
                Method::ClosedFormVsClosedForm,
                0,
                s,
            ))
        }));
    }

    // CGP of unitaries: subentropy formula against Monte Carlo.
    for n in 2..=4usize {
        let s = key(800 + n as u64);
        out.push(Box::new(move || {
            let u = random_unitary(n, s)?;
            let ch = KrausChannel::from_unitary(&u);
            let closed = q_transpose_with(&ch.kraus_matrix(), q)?;
            let e = mc_cgp(&ch, samples, s)?;
            Ok(IdentityReport::equality(
                format!("exact_cgp_vs_mc_n{n}"),
                e.mean,
                closed,
                MC_SIGMAS * e.std_error + MC_FLOOR,
                Method::ClosedFormVsMc,
                e.samples,
                s,
            ))
        }));
    }

    // Unital bound: Monte Carlo CGP ≤ Q(B(Φ)ᵀ).
    for (i, (n, k)) in [(2usize, 2usize), (3, 3), (3, 2)].into_iter().enumerate() {
        let s = key(900 + i as u64);
        out.push(Box::new(move || {
            let ch = random_unital_channel(n, k, s)?;
            let bound = q_transpose_with(&ch.kraus_matrix(), q)?;
            let e = mc_cgp(&ch, samples, s)?;
            Ok(IdentityReport::at_most(
                format!("unital_bound_n{n}_k{k}"),
                e.mean,
                bound,
                BOUND_SIGMAS * e.std_error + BOUND_ABS_TOL,
                Method::ClosedFormVsMc,
                e.samples,
                s,
            ))
        }));
    }

    out
}

/// Runs every check with default settings.
pub fn run_identity_battery(seed: u64) -> Vec<IdentityReport> {
    run_identity_battery_with(seed, BatteryConfig::default())
}

/// Runs every check; reports come back sorted by name. A check that errors
/// is reported as failed with NaN sides rather than aborting the battery.
pub fn run_identity_battery_with(seed: u64, cfg: BatteryConfig) -> Vec<IdentityReport> {
    let checks = checks(seed, cfg);
    let mut reports: Vec<IdentityReport> = checks
        .par_iter()
        .enumerate()
        .map(|(i, check)| {
            check().unwrap_or_else(|e| IdentityReport {
                name: format!("check_{i}_error: {e}"),
                lhs: f64::NAN,
                rhs: f64::NAN,
                abs_diff: f64::NAN,
                tolerance: 0.0,
                method: Method::ClosedFormVsClosedForm,
                samples: 0,
                seed,
                passed: false,
            })
        })
        .collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(v: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn ip_alpha_at_one_is_one_over_n() {
        for seed in 0..20 {
            let n = 2 + (seed % 5) as usize;
            let p = SimplexSampler::new(n, seed).unwrap().sample_at(0);
            let v = ip_alpha_closed(&p, 1.0).unwrap();
            assert!((v - 1.0 / n as f64).abs() < 1e-12, "n = {n}: {v}");
        }
    }

    #[test]
    fn ip_alpha_uniform_is_power() {
        for n in 2..6 {
            for alpha in [0.5, 1.0, 2.5, 3.0] {
                let v = ip_alpha_closed(&ProbabilityVector::uniform(n), alpha).unwrap();
                assert!((v - (n as f64).powf(-alpha)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ip_alpha_two_point_mc() {
        let p = pv(&[0.7, 0.3]);
        let closed = ip_alpha_closed(&p, 2.0).unwrap();
        let mc = ip_alpha_mc(&p, 2.0, 100_000, 3).unwrap();
        assert!((mc.mean - closed).abs() <= 4.0 * mc.std_error());
        // ∫(0.3 + 0.4x)² dx over [0, 1] = 0.09 + 0.12 + 0.16/3.
        assert!((closed - (0.09 + 0.12 + 0.16 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn ip_alpha_rejects_small_alpha() {
        assert!(ip_alpha_closed(&pv(&[0.5, 0.5]), -1.0).is_err());
    }

    #[test]
    fn ip_prime_examples() {
        assert!((ip_prime_at_one(&pv(&[1.0, 0.0])) + 0.25).abs() < 1e-15);
        for n in 2..6 {
            let v = ip_prime_at_one(&ProbabilityVector::uniform(n));
            assert!((v + (n as f64).ln() / n as f64).abs() < 1e-14);
        }
        // −(H_3 − 1 + Q(0.5, 0.3, 0.2))/3 with Q from extended-precision evaluation.
        let v = ip_prime_at_one(&pv(&[0.5, 0.3, 0.2]));
        assert!((v + 0.360_403_372_325_210_86).abs() < 1e-14, "{v}");
    }

    #[test]
    fn ip_prime_matches_central_difference() {
        for seed in 0..10 {
            let p = SimplexSampler::new(2 + (seed % 4) as usize, seed)
                .unwrap()
                .sample_at(0);
            let d = ip_prime_numeric(&p, DERIVATIVE_STEP).unwrap();
            assert!((d - ip_prime_at_one(&p)).abs() < DERIVATIVE_TOL);
        }
    }

    #[test]
    fn lemma_examples() {
        let r = verify_lemma_integral(&StochasticMatrix::identity(3), 50_000, 1).unwrap();
        assert!(r.passed, "{r:?}");
        let r = verify_lemma_integral(&StochasticMatrix::uniform(3), 1000, 1).unwrap();
        assert!(r.passed && r.abs_diff < 1e-12, "{r:?}");
        let b = KrausChannel::from_unitary(&random_unitary(3, 4).unwrap()).kraus_matrix();
        assert!(verify_lemma_integral(&b, 100_000, 4).unwrap().passed);
        let ad = KrausChannel::amplitude_damping(0.5).unwrap().kraus_matrix();
        assert!(matches!(
            verify_lemma_integral(&ad, 1000, 0),
            Err(Error::NotBiStochastic(_))
        ));
    }

    #[test]
    fn weighted_entropy_examples() {
        let r = verify_weighted_entropy_integral(&StochasticMatrix::identity(4), 1000, 2).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        let r = verify_weighted_entropy_integral(&StochasticMatrix::uniform(4), 1000, 2).unwrap();
        assert!(r.passed);
        assert!((r.rhs - 4f64.ln()).abs() < 1e-15);
        let r =
            verify_weighted_entropy_integral(&random_sinkhorn(4, 8).unwrap(), 100_000, 8).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn q_le_h_examples() {
        let r = verify_q_le_h(&StochasticMatrix::identity(3)).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        let r = verify_q_le_h(&StochasticMatrix::uniform(4)).unwrap();
        assert!(r.passed);
        assert!((r.lhs - crate::special::max_subentropy(4)).abs() < 1e-14);
        let ad = KrausChannel::amplitude_damping(0.5).unwrap().kraus_matrix();
        assert!(verify_q_le_h(&ad).is_err());
    }

    #[test]
    fn separated_points_are_separated() {
        for seed in 0..20 {
            let p = random_separated_point(5, seed);
            let mut s = p.into_vec();
            s.sort_by(f64::total_cmp);
            assert!(s.windows(2).all(|w| w[1] - w[0] >= MIN_GAP));
        }
    }

    #[test]
    fn battery_is_deterministic_and_sorted() {
        let cfg = BatteryConfig {
            samples: 2000,
            ..BatteryConfig::default()
        };
        let a = run_identity_battery_with(3, cfg);
        let b = run_identity_battery_with(3, cfg);
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].name <= w[1].name));
    }

    #[test]
    fn flipped_subentropy_fails_the_battery() {
        let cfg = BatteryConfig {
            samples: 20_000,
            subentropy: |p| -subentropy(p),
        };
        let failed: Vec<_> = run_identity_battery_with(0, cfg)
            .into_iter()
            .filter(|r| !r.passed)
            .map(|r| r.name)
            .collect();
        assert!(
            failed.iter().any(|n| n.starts_with("lemma_integral")),
            "{failed:?}"
        );
        assert!(
            failed.iter().any(|n| n.starts_with("exact_cgp_vs_mc")),
            "{failed:?}"
        );
    }
}

//! Log-gamma and harmonic numbers.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` via the Lanczos approximation (g = 7, 9 terms).
/// Arguments below 1/2 go through the reflection formula.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx)
        return (PI / (PI * x).sin()).abs().ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS_COEF[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &coef) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += coef / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// `H_N = Σ_{j=1}^N 1/j`, summed from the smallest term up.
pub fn harmonic(n: u32) -> f64 {
    (1..=n).rev().map(|j| 1.0 / j as f64).sum()
}

/// `ln N − H_N + 1`: the largest subentropy of an N-outcome distribution.
pub fn max_subentropy(n: usize) -> f64 {
    (n as f64).ln() - harmonic(n as u32) + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        let mut fact = 1.0f64;
        for n in 1..30u32 {
            // Γ(n) = (n−1)!
            let rel = (ln_gamma(n as f64) - fact.ln()).abs() / fact.ln().abs().max(1.0);
            assert!(rel < 1e-13, "n = {n}: rel {rel:e}");
            fact *= n as f64;
        }
    }

    #[test]
    fn half_integers() {
        // Γ(1/2) = √π, Γ(5/2) = 3√π/4
        assert!((ln_gamma(0.5) - PI.sqrt().ln()).abs() < 1e-14);
        assert!((ln_gamma(2.5) - (0.75 * PI.sqrt()).ln()).abs() < 1e-14);
    }

    #[test]
    fn large_argument_stirling() {
        // Stirling series with three correction terms is accurate to ~1e-16 at x = 150.
        let x: f64 = 150.0;
        let stirling = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x.powi(3))
            + 1.0 / (1260.0 * x.powi(5));
        assert!(((ln_gamma(x) - stirling) / stirling).abs() < 1e-13);
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1), 1.0);
        assert_eq!(harmonic(2), 1.5);
        assert!((harmonic(4) - 25.0 / 12.0).abs() < 1e-15);
        assert!((max_subentropy(4) - 0.302_961).abs() < 1e-6);
    }
}

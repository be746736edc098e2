//! Subentropy at repeated and zero eigenvalues, where the quotient formula
//! divides by zero, compared with nearby distinct-node evaluations.
//!
//! cargo run --example degenerate_subentropy

use cgpkit::divdiff::{
    confluent_divided_difference, quotient_divided_difference, FnFamily, XPowLog,
};
use cgpkit::{subentropy, ProbabilityVector};

fn main() -> cgpkit::Result<()> {
    let cases: [&[f64]; 4] = [
        &[0.5, 0.5, 0.0, 0.0],
        &[0.25, 0.25, 0.25, 0.25],
        &[0.6, 0.2, 0.2],
        &[0.5, 0.25, 0.25, 0.0],
    ];
    for p in cases {
        let q = subentropy(&ProbabilityVector::new(p.to_vec())?);
        let f = XPowLog::new(p.len() as f64);
        // x^N ln|x| agrees with f on [0, ∞) and tolerates nodes pushed below 0.
        let n = p.len() as i32;
        let g = FnFamily(|order: usize, x: f64| {
            (order == 0).then(|| {
                if x == 0.0 {
                    0.0
                } else {
                    x.powi(n) * x.abs().ln()
                }
            })
        });
        // Spread tied nodes symmetrically by ε and extrapolate over ε, ε/2.
        let jitter = |eps: f64| -> cgpkit::Result<f64> {
            let mut nodes = p.to_vec();
            for (i, &v) in p.iter().enumerate() {
                let tied: Vec<usize> = (0..p.len()).filter(|&j| p[j] == v).collect();
                let k = tied.iter().position(|&j| j == i).unwrap() as f64;
                nodes[i] = v + eps * (k - (tied.len() - 1) as f64 / 2.0);
            }
            Ok(-quotient_divided_difference(&g, &nodes)?)
        };
        let (a, b) = (jitter(3e-3)?, jitter(1.5e-3)?);
        println!(
            "{:?}: confluent {:.12}, jittered {:.12}, extrapolated {:.12}",
            p,
            q,
            a,
            (4.0 * b - a) / 3.0
        );
        assert_eq!(q, 0.0 - confluent_divided_difference(&f, p)?);
    }
    Ok(())
}

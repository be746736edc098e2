//! Haar-random unitaries: exact CGP compared with Monte Carlo, and the
//! spread of CGP values as the dimension grows.
//!
//! cargo run --release --example random_ensembles

use cgpkit::{exact_cgp, max_cgp, mc_cgp, random_unitary, KrausChannel};

fn main() -> cgpkit::Result<()> {
    for n in 2..=6 {
        let values: Vec<f64> = (0..200)
            .map(|s| random_unitary(n, s).map(|u| exact_cgp(&u)))
            .collect::<cgpkit::Result<_>>()?;
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let hi = values.iter().copied().fold(0.0, f64::max);
        println!(
            "N={n}: mean {mean:.5}, largest {hi:.5}, maximum possible {:.5}",
            max_cgp(n)
        );
    }
    let u = random_unitary(3, 7)?;
    let est = mc_cgp(&KrausChannel::from_unitary(&u), 100_000, 7)?;
    println!(
        "N=3 seed 7: exact {:.6}, Monte Carlo {:.6} ± {:.6}",
        exact_cgp(&u),
        est.mean,
        est.std_error
    );
    Ok(())
}

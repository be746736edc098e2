//! The square root of swap and the partial swap at t = 1/2 have the same
//! Kraus matrix, so their CGPs coincide. The value ½·ln 2 that is sometimes
//! quoted for √swap exceeds the maximum any 4 × 4 unitary can reach.
//!
//! cargo run --release --example sqrt_swap

use cgpkit::{exact_cgp, make_gate, max_cgp, mc_cgp, GateSpec, KrausChannel};

fn main() -> cgpkit::Result<()> {
    let root = make_gate(&GateSpec::SqrtSwap)?;
    let partial = make_gate(&GateSpec::PartialSwap { t: 0.5, d: 2 })?;

    let b_root = KrausChannel::from_unitary(&root).kraus_matrix();
    let b_partial = KrausChannel::from_unitary(&partial).kraus_matrix();
    println!(
        "max |B(√swap) − B(U_1/2)| = {:e}",
        b_root.max_abs_diff(&b_partial)
    );

    let exact = exact_cgp(&root);
    println!("CGP(√swap)      = {exact:.17}");
    println!("CGP(U_1/2)      = {:.17}", exact_cgp(&partial));
    println!("(2 ln 2 − 1)/4  = {:.17}", (2.0 * 2f64.ln() - 1.0) / 4.0);

    let est = mc_cgp(&KrausChannel::from_unitary(&root), 100_000, 2024)?;
    println!(
        "Monte Carlo     = {:.6} ± {:.6} ({} samples)",
        est.mean, est.std_error, est.samples
    );

    let quoted = 0.5 * 2f64.ln();
    println!("½ ln 2          = {quoted:.17}");
    println!("max CGP, N = 4  = {:.17}", max_cgp(4));
    println!("½ ln 2 exceeds the maximum: {}", quoted > max_cgp(4));
    Ok(())
}

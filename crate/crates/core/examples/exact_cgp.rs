//! Exact CGP of the named gates, against the largest value for their size.
//!
//! cargo run --example exact_cgp

use cgpkit::{exact_cgp, is_max_cgp_unitary, make_gate, max_cgp, GateSpec};

fn main() -> cgpkit::Result<()> {
    let names = [
        "identity:2",
        "hadamard",
        "rotation:0.7853981633974483",
        "partial-swap:0.5",
        "sqrt-swap",
        "swap",
        "fourier:3",
        "fourier:4",
        "max-cgp-qubit:0.3:1.1:-0.4",
    ];
    println!(
        "{:<30} {:>4} {:>22} {:>22} {:>7}",
        "gate", "N", "cgp", "max", "is_max"
    );
    for name in names {
        let u = make_gate(&name.parse::<GateSpec>()?)?;
        println!(
            "{:<30} {:>4} {:>22.17} {:>22.17} {:>7}",
            name,
            u.dim(),
            exact_cgp(&u),
            max_cgp(u.dim()),
            is_max_cgp_unitary(&u, 1e-10)
        );
    }
    Ok(())
}

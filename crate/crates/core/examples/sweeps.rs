//! The CGP curves of the rotation family over [0, π] and the partial-swap
//! family over [0, 1], written as CSV to the current directory.
//!
//! cargo run --example sweeps

use std::path::Path;

use cgpkit::cli::{cmd_sweep, sweep, SweepGate};

fn main() {
    for (gate, to, steps, file) in [
        (
            SweepGate::Rotation,
            std::f64::consts::PI,
            181,
            "rotation.csv",
        ),
        (SweepGate::PartialSwap, 1.0, 101, "partial_swap.csv"),
    ] {
        let out = cmd_sweep(gate, 0.0, to, steps, Path::new(file));
        assert_eq!(out.code, 0, "{}", out.stderr);

        let rows = sweep(gate, 0.0, to, steps).unwrap();
        let peak = rows.iter().map(|r| r.1).fold(0.0, f64::max);
        let argmax: Vec<String> = rows
            .iter()
            .filter(|r| r.1 > peak - 1e-12)
            .map(|r| format!("{:.6}", r.0))
            .collect();
        println!(
            "{file}: {steps} rows, max {peak:.9} at {}",
            argmax.join(", ")
        );
    }
}

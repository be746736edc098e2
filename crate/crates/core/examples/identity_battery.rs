//! Runs the identity battery and prints one line per check.
//!
//! cargo run --release --example identity_battery [seed]

use cgpkit::run_identity_battery;

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let reports = run_identity_battery(seed);
    for r in &reports {
        println!(
            "{} {:<44} lhs {:>12.8} rhs {:>12.8} |diff| {:.2e} tol {:.2e}",
            if r.passed { "pass" } else { "FAIL" },
            r.name,
            r.lhs,
            r.rhs,
            r.abs_diff,
            r.tolerance
        );
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} checks, {failed} failed", reports.len());
    std::process::exit(i32::from(failed > 0));
}

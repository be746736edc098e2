//! Relative entropy of coherence of a few states, and the entropy-gain
//! inequality `S(Φ(ρ)) − S(ρ) ≥ S(ρ ‖ Φ*Φ(ρ))` for random unital channels.
//!
//! cargo run --example entropy_gain

use cgpkit::{
    entropy_gain_gap, random_density_matrix, random_unital_channel, relative_entropy_of_coherence,
    Complex64, DensityMatrix,
};

fn main() -> cgpkit::Result<()> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = DensityMatrix::pure(&[Complex64::new(s, 0.0), Complex64::new(s, 0.0)])?;
    let third = 1.0 / 3f64.sqrt();
    let uniform3 = DensityMatrix::pure(&[Complex64::new(third, 0.0); 3])?;
    for (name, rho) in [
        ("|0⟩", DensityMatrix::basis(2, 0)),
        ("|+⟩", plus),
        ("uniform qutrit superposition", uniform3),
        ("maximally mixed qutrit", DensityMatrix::maximally_mixed(3)),
        ("random qutrit", random_density_matrix(3, 4)),
    ] {
        println!("C_r({name}) = {:.6}", relative_entropy_of_coherence(&rho)?);
    }

    let mut smallest = f64::INFINITY;
    for seed in 0..50 {
        let n = 2 + (seed % 3) as usize;
        let ch = random_unital_channel(n, 1 + (seed % 4) as usize, seed)?;
        let rho = random_density_matrix(n, seed + 100);
        smallest = smallest.min(entropy_gain_gap(&ch, &rho)?);
    }
    println!("smallest entropy-gain gap over 50 random pairs: {smallest:.3e}");
    Ok(())
}

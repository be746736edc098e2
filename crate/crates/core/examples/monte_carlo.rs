//! Monte Carlo CGP of channels that are not unitary, and the fact that the
//! estimate does not depend on the number of worker threads.
//!
//! cargo run --release --example monte_carlo

use cgpkit::{
    make_gate, mc_cgp_with_workers, random_unital_channel, GateSpec, KrausChannel,
    ProbabilityVector,
};

fn main() -> cgpkit::Result<()> {
    let h = make_gate(&GateSpec::Hadamard)?;
    let channels = [
        ("dephasing(3)", KrausChannel::dephasing(3)),
        (
            "amplitude damping 0.3",
            KrausChannel::amplitude_damping(0.3)?,
        ),
        (
            "½ id + ½ Hadamard",
            KrausChannel::mixture_of_unitaries(
                &ProbabilityVector::uniform(2),
                &[make_gate(&GateSpec::Identity(2))?, h],
            )?,
        ),
        (
            "random unital, N=3, 2 ops",
            random_unital_channel(3, 2, 11)?,
        ),
    ];
    for (name, ch) in &channels {
        let one = mc_cgp_with_workers(ch, 50_000, 5, Some(1))?;
        let four = mc_cgp_with_workers(ch, 50_000, 5, Some(4))?;
        assert_eq!(one, four);
        println!("{name:<28} {:.6} ± {:.6}", one.mean, one.std_error);
    }
    Ok(())
}

//! For unital channels the CGP is bounded by the subentropy expression of
//! the Kraus matrix; for unitaries the bound is attained.
//!
//! cargo run --release --example unital_bound

use cgpkit::{check_unital_bound, make_gate, random_unital_channel, GateSpec, KrausChannel};

fn main() -> cgpkit::Result<()> {
    let mut channels = vec![(
        "hadamard".to_string(),
        KrausChannel::from_unitary(&make_gate(&GateSpec::Hadamard)?),
    )];
    for (n, k) in [(2, 2), (3, 2), (3, 4), (4, 3)] {
        channels.push((
            format!("random N={n} k={k}"),
            random_unital_channel(n, k, 99)?,
        ));
    }
    println!(
        "{:<20} {:>10} {:>10} {:>10} {:>5}",
        "channel", "cgp", "bound", "slack", "ok"
    );
    for (name, ch) in &channels {
        let r = check_unital_bound(ch, 50_000, 1)?;
        println!(
            "{name:<20} {:>10.6} {:>10.6} {:>10.6} {:>5}",
            r.estimate.mean, r.bound, r.slack, r.satisfied
        );
    }

    match check_unital_bound(&KrausChannel::amplitude_damping(0.5)?, 1000, 0) {
        Err(e) => println!("amplitude damping: {e}"),
        Ok(_) => unreachable!("amplitude damping is not unital"),
    }
    Ok(())
}

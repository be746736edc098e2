//! Coherence generating power (CGP) of quantum channels.
//!
//! For a unitary channel the CGP is exact: the mean subentropy of the rows
//! of `B(U) = [|u_ij|²]` ([`exact_cgp`]). For any other channel it is
//! estimated by seeded Monte Carlo over the uniform ensemble of diagonal
//! states ([`mc_cgp`]), and for unital channels it is bounded above by the
//! same subentropy expression applied to the channel's Kraus matrix
//! ([`unital_bound`]). The [`oracle`] module checks the integral identities
//! these formulas rest on.
//!
//! ```
//! use cgpkit::{exact_cgp, make_gate, GateSpec};
//!
//! let h = make_gate(&GateSpec::Hadamard).unwrap();
//! assert!((exact_cgp(&h) - (2f64.ln() - 0.5)).abs() < 1e-12);
//! ```

pub mod cgp;
pub mod channels;
pub mod cli;
pub mod density;
pub mod divdiff;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod montecarlo;
pub mod oracle;
pub mod simplex;
pub mod special;
pub mod stochastic;

pub use cgp::{
    cgp_curve_partial_swap, cgp_curve_rotation, check_unital_bound, entropy_gain_gap, exact_cgp,
    is_max_cgp_unitary, max_cgp, mc_cgp, mc_cgp_with_workers, unital_bound, CgpBoundReport,
    CgpEstimate,
};
pub use channels::{
    make_gate, random_density_matrix, random_unital_channel, random_unitary, GateSpec,
    KrausChannel, KrausMap,
};
pub use density::DensityMatrix;
pub use entropy::{
    quantum_relative_entropy, relative_entropy, relative_entropy_of_coherence, shannon, subentropy,
    von_neumann,
};
pub use error::{Error, Result};
pub use linalg::{eigh, ComplexMatrix, Eigh, UnitaryMatrix};
pub use oracle::{run_identity_battery, IdentityReport};
pub use simplex::{ProbabilityVector, SimplexSampler};
pub use stochastic::{sinkhorn, StochasticMatrix};

pub use num_complex::Complex64;

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, UnitaryMatrix};

/// Unitarity tolerance for the closed-form gate constructions.
const GATE_TOL: f64 = 1e-12;

/// Named gates, with string forms like `rotation:0.7853` or
/// `partial-swap:0.5`.
#[derive(Clone, Debug, PartialEq)]
pub enum GateSpec {
    /// `identity:N`
    Identity(usize),
    /// `hadamard`
    Hadamard,
    /// `rotation:θ`, the real rotation `[[cos θ, sin θ], [−sin θ, cos θ]]`.
    Rotation(f64),
    /// `sqrt-swap`
    SqrtSwap,
    /// `partial-swap:t[:d]`, `√t·I + i√(1−t)·S` on `C^d ⊗ C^d` (default `d = 2`).
    PartialSwap { t: f64, d: usize },
    /// `swap[:d]`
    Swap(usize),
    /// `fourier:N`
    Fourier(usize),
    /// `max-cgp-qubit:φ:θ:γ`, the qubit family with all `|u_ij|² = 1/2`.
    MaxCgpQubit { phi: f64, theta: f64, gamma: f64 },
    /// `custom:PATH`, a unitary read from a gate file.
    Custom(PathBuf),
}

impl FromStr for GateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::BadParameter(format!("gate `{s}`: {msg}"));
        if let Some(path) = s.strip_prefix("custom:") {
            return Ok(Self::Custom(PathBuf::from(path)));
        }
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let real = |k: usize| -> Result<f64> {
            args.get(k)
                .ok_or_else(|| bad("missing parameter"))?
                .parse::<f64>()
                .map_err(|_| bad("parameter is not a number"))
        };
        let int = |k: usize| -> Result<usize> {
            args.get(k)
                .ok_or_else(|| bad("missing parameter"))?
                .parse::<usize>()
                .map_err(|_| bad("parameter is not a positive integer"))
        };
        let arity = |n: std::ops::RangeInclusive<usize>| {
            if n.contains(&args.len()) {
                Ok(())
            } else {
                Err(bad("wrong number of parameters"))
            }
        };
        let spec = match name {
            "identity" => {
                arity(1..=1)?;
                Self::Identity(int(0)?)
            }
            "hadamard" => {
                arity(0..=0)?;
                Self::Hadamard
            }
            "rotation" => {
                arity(1..=1)?;
                Self::Rotation(real(0)?)
            }
            "sqrt-swap" => {
                arity(0..=0)?;
                Self::SqrtSwap
            }
            "partial-swap" => {
                arity(1..=2)?;
                let d = if args.len() == 2 { int(1)? } else { 2 };
                Self::PartialSwap { t: real(0)?, d }
            }
            "swap" => {
                arity(0..=1)?;
                Self::Swap(if args.is_empty() { 2 } else { int(0)? })
            }
            "fourier" => {
                arity(1..=1)?;
                Self::Fourier(int(0)?)
            }
            "max-cgp-qubit" => {
                arity(3..=3)?;
                Self::MaxCgpQubit {
                    phi: real(0)?,
                    theta: real(1)?,
                    gamma: real(2)?,
                }
            }
            _ => return Err(bad("unknown gate")),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Identity(n) => write!(f, "identity:{n}"),
            Self::Hadamard => write!(f, "hadamard"),
            Self::Rotation(theta) => write!(f, "rotation:{theta}"),
            Self::SqrtSwap => write!(f, "sqrt-swap"),
            Self::PartialSwap { t, d } => write!(f, "partial-swap:{t}:{d}"),
            Self::Swap(d) => write!(f, "swap:{d}"),
            Self::Fourier(n) => write!(f, "fourier:{n}"),
            Self::MaxCgpQubit { phi, theta, gamma } => {
                write!(f, "max-cgp-qubit:{phi}:{theta}:{gamma}")
            }
            Self::Custom(path) => write!(f, "custom:{}", path.display()),
        }
    }
}

impl GateSpec {
    fn validate(&self) -> Result<()> {
        let finite = |x: f64, what: &str| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(Error::BadParameter(format!("{what} must be finite")))
            }
        };
        match *self {
            Self::Identity(n) | Self::Fourier(n) if n == 0 => {
                Err(Error::BadParameter("dimension must be at least 1".into()))
            }
            Self::Swap(0) => Err(Error::BadParameter(
                "local dimension must be at least 1".into(),
            )),
            Self::Rotation(theta) => finite(theta, "rotation angle"),
            Self::PartialSwap { t, d } => {
                if !(0.0..=1.0).contains(&t) {
                    Err(Error::BadParameter(format!(
                        "partial-swap t = {t} outside [0, 1]"
                    )))
                } else if d == 0 {
                    Err(Error::BadParameter(
                        "local dimension must be at least 1".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            Self::MaxCgpQubit { phi, theta, gamma } => {
                finite(phi, "phi")?;
                finite(theta, "theta")?;
                finite(gamma, "gamma")
            }
            _ => Ok(()),
        }
    }
}

fn swap_matrix(d: usize) -> ComplexMatrix {
    // S|ij⟩ = |ji⟩ with |ij⟩ at index i·d + j.
    ComplexMatrix::from_fn(d * d, |row, col| {
        let (i, j) = (col / d, col % d);
        if row == j * d + i {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

fn expi(x: f64) -> Complex64 {
    let (s, co) = x.sin_cos();
    c(co, s)
}

/// Builds the unitary for a gate specification from its closed form.
pub fn make_gate(spec: &GateSpec) -> Result<UnitaryMatrix> {
    spec.validate()?;
    let m = match *spec {
        GateSpec::Identity(n) => ComplexMatrix::identity(n),
        GateSpec::Hadamard => {
            let h = FRAC_1_SQRT_2;
            ComplexMatrix::from_rows(vec![
                vec![c(h, 0.0), c(h, 0.0)],
                vec![c(h, 0.0), c(-h, 0.0)],
            ])?
        }
        GateSpec::Rotation(theta) => {
            let (s, co) = theta.sin_cos();
            ComplexMatrix::from_rows(vec![
                vec![c(co, 0.0), c(s, 0.0)],
                vec![c(-s, 0.0), c(co, 0.0)],
            ])?
        }
        GateSpec::SqrtSwap => {
            let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
            let (p, q) = (c(0.5, 0.5), c(0.5, -0.5));
            ComplexMatrix::from_rows(vec![
                vec![o, z, z, z],
                vec![z, p, q, z],
                vec![z, q, p, z],
                vec![z, z, z, o],
            ])?
        }
        GateSpec::PartialSwap { t, d } => {
            let id = ComplexMatrix::identity(d * d).scale(c(t.sqrt(), 0.0));
            id.add(&swap_matrix(d).scale(c(0.0, (1.0 - t).sqrt())))
        }
        GateSpec::Swap(d) => swap_matrix(d),
        GateSpec::Fourier(n) => {
            let scale = 1.0 / (n as f64).sqrt();
            ComplexMatrix::from_fn(n, |j, k| {
                // Reduce jk mod N first so the angle stays in [0, 2π).
                expi(2.0 * PI * ((j * k) % n) as f64 / n as f64) * scale
            })
        }
        GateSpec::MaxCgpQubit { phi, theta, gamma } => {
            let g = expi(phi) * FRAC_1_SQRT_2;
            ComplexMatrix::from_rows(vec![
                vec![g * expi(theta), -g * expi(-gamma)],
                vec![g * expi(gamma), g * expi(-theta)],
            ])?
        }
        GateSpec::Custom(ref path) => return super::io::read_unitary(path),
    };
    UnitaryMatrix::with_tolerance(m, GATE_TOL)
}

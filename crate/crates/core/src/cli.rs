//! Command-line surface. Each `cmd_*` function returns the exit code and the
//! text destined for standard output and standard error, so commands can be
//! driven from tests without spawning a process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
//! 3 validation failure, 4 unmet precondition, 5 I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cgp::{
    cgp_curve_partial_swap, cgp_curve_rotation, exact_cgp, is_max_cgp_unitary, max_cgp,
    mc_cgp_with_workers, unital_bound,
};
use crate::channels::io::{read_channel, read_unitary, write_unitary};
use crate::channels::{make_gate, GateSpec};
use crate::error::{Error, Result};
use crate::oracle::run_identity_battery;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_IO: i32 = 5;

/// Tolerance for the `is_max` flag of `exact`.
pub const IS_MAX_TOL: f64 = 1e-10;

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "CGPKIT_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "cgpkit",
    version,
    about = "Coherence generating power of quantum channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepGate {
    Rotation,
    PartialSwap,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact CGP of a unitary gate file.
    Exact {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Monte Carlo CGP of a channel file.
    Estimate {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: all cores). Does not change the output.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Upper bound on the CGP of a unital channel file.
    Bound { file: PathBuf },
    /// Closed-form CGP curve of a one-parameter gate family, as CSV.
    Sweep {
        #[arg(long, value_enum)]
        gate: SweepGate,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Writes a gate file, e.g. `hadamard`, `rotation:0.7853`, `fourier:4`.
    Gate {
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Runs the identity battery.
    Verify {
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Self {
            code: exit_code(e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

fn finish(r: Result<String>) -> Output {
    r.map_or_else(|e| Output::error(&e), Output::ok)
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::BadParameter(_) => EXIT_PARSE,
        Error::Io { .. } => EXIT_IO,
        Error::NotUnital(_) => EXIT_PRECONDITION,
        _ => EXIT_VALIDATION,
    }
}

/// Formats a real with 17 significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain structs serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ExactReport {
    dim: usize,
    cgp: f64,
    max_cgp: f64,
    is_max: bool,
}

pub fn cmd_exact(file: &Path, format: Format) -> Output {
    finish((|| {
        let u = read_unitary(file)?;
        let r = ExactReport {
            dim: u.dim(),
            cgp: exact_cgp(&u),
            max_cgp: max_cgp(u.dim()),
            is_max: is_max_cgp_unitary(&u, IS_MAX_TOL),
        };
        Ok(match format {
            Format::Json => to_json_line(&r),
            Format::Csv => format!(
                "dim,cgp,max_cgp,is_max\n{},{},{},{}\n",
                r.dim,
                format_real(r.cgp),
                format_real(r.max_cgp),
                r.is_max
            ),
        })
    })())
}

#[derive(Serialize)]
struct EstimateReport {
    mean: f64,
    std_error: f64,
    samples: u64,
    seed: u64,
}

pub fn cmd_estimate(file: &Path, samples: u64, seed: u64, workers: Option<usize>) -> Output {
    finish((|| {
        let ch = read_channel(file)?;
        let e = mc_cgp_with_workers(&ch, samples, seed, workers)?;
        Ok(to_json_line(&EstimateReport {
            mean: e.mean,
            std_error: e.std_error,
            samples: e.samples,
            seed: e.seed,
        }))
    })())
}

#[derive(Serialize)]
struct BoundReport {
    bound: f64,
    unital: bool,
}

pub fn cmd_bound(file: &Path) -> Output {
    finish((|| {
        let ch = read_channel(file)?;
        Ok(to_json_line(&BoundReport {
            bound: unital_bound(&ch)?,
            unital: true,
        }))
    })())
}

/// Sweep grid and values; `param` strictly increasing.
pub fn sweep(gate: SweepGate, from: f64, to: f64, steps: usize) -> Result<Vec<(f64, f64)>> {
    if steps < 2 {
        return Err(Error::BadParameter(format!(
            "steps = {steps}, need at least 2"
        )));
    }
    if !(from.is_finite() && to.is_finite() && from < to) {
        return Err(Error::BadParameter(format!(
            "range [{from}, {to}] must be finite with from < to"
        )));
    }
    if gate == SweepGate::PartialSwap && (from < 0.0 || to > 1.0) {
        return Err(Error::BadParameter(format!(
            "partial-swap range [{from}, {to}] must lie within [0, 1]"
        )));
    }
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|k| {
            let x = if k == steps - 1 {
                to
            } else {
                from + (to - from) * (k as f64 / last)
            };
            let y = match gate {
                SweepGate::Rotation => cgp_curve_rotation(x),
                SweepGate::PartialSwap => cgp_curve_partial_swap(x)?,
            };
            Ok((x, y))
        })
        .collect()
}

/// CSV text with header `param,cgp`.
pub fn sweep_csv(rows: &[(f64, f64)]) -> String {
    let mut s = String::from("param,cgp\n");
    for &(x, y) in rows {
        let _ = writeln!(s, "{},{}", format_real(x), format_real(y));
    }
    s
}

pub fn cmd_sweep(gate: SweepGate, from: f64, to: f64, steps: usize, out: &Path) -> Output {
    finish((|| {
        let csv = sweep_csv(&sweep(gate, from, to, steps)?);
        fs::write(out, csv).map_err(|source| Error::Io {
            path: out.to_path_buf(),
            source,
        })?;
        Ok(String::new())
    })())
}

pub fn cmd_gate(name: &str, out: &Path) -> Output {
    finish((|| {
        let spec: GateSpec = name.parse()?;
        write_unitary(out, &make_gate(&spec)?)?;
        Ok(String::new())
    })())
}

pub fn cmd_verify(seed: u64) -> Output {
    let reports = run_identity_battery(seed);
    let mut stdout = serde_json::to_string_pretty(&reports).expect("reports serialize");
    stdout.push('\n');
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name.as_str())
        .collect();
    if failed.is_empty() {
        Output::ok(stdout)
    } else {
        Output {
            code: EXIT_VERIFY,
            stdout,
            stderr: format!("failed: {}\n", failed.join(", ")),
        }
    }
}

/// Dispatches a parsed command line.
pub fn run(cli: Cli) -> Output {
    match cli.command {
        Command::Exact { file, format } => cmd_exact(&file, format),
        Command::Estimate {
            file,
            samples,
            seed,
            workers,
        } => cmd_estimate(&file, samples, seed, workers),
        Command::Bound { file } => cmd_bound(&file),
        Command::Sweep {
            gate,
            from,
            to,
            steps,
            out,
        } => cmd_sweep(gate, from, to, steps, &out),
        Command::Gate { name, out } => cmd_gate(&name, &out),
        Command::Verify { seed } => cmd_verify(seed),
    }
}

/// Parses `args` (program name first) and runs the command. Usage errors
/// exit with 2; `--help` and `--version` exit with 0.
pub fn run_from<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Output {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output::ok(text)
            }
        }
    }
}

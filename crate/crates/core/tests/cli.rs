use std::path::Path;
use std::process::Command;

use cgpkit::channels::io::{read_unitary, write_channel};
use cgpkit::{make_gate, GateSpec, KrausChannel, ProbabilityVector};
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cgpkit(args: &[&str]) -> Run {
    cgpkit_env(args, None)
}

fn cgpkit_env(args: &[&str], seed_env: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cgpkit"));
    cmd.args(args).env_remove("CGPKIT_SEED");
    if let Some(s) = seed_env {
        cmd.env("CGPKIT_SEED", s);
    }
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn gate_file(dir: &TempDir, name: &str) -> String {
    let path = dir.path().join(format!("{}.json", name.replace(':', "_")));
    let r = cgpkit(&["gate", name, "--out", path_str(&path)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    path_str(&path).to_string()
}

#[test]
fn exact_hadamard_and_fourier() {
    let dir = TempDir::new().unwrap();
    let h = gate_file(&dir, "hadamard");
    let r = cgpkit(&["exact", &h]);
    assert_eq!(r.code, 0);
    let v = json(&r.stdout);
    assert!((v["cgp"].as_f64().unwrap() - (2f64.ln() - 0.5)).abs() < 1e-12);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["is_max"], true);

    let f4 = gate_file(&dir, "fourier:4");
    let v = json(&cgpkit(&["exact", &f4]).stdout);
    assert!((v["cgp"].as_f64().unwrap() - 0.302_961_027_786_557_5).abs() < 1e-12);
    assert_eq!(v["is_max"], true);
    assert!((v["max_cgp"].as_f64().unwrap() - v["cgp"].as_f64().unwrap()).abs() < 1e-12);

    let r = cgpkit(&["exact", &h, "--format", "csv"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "dim,cgp,max_cgp,is_max");
    assert!(lines[1].starts_with("2,1.93147180559945"));
}

#[test]
fn exact_rejects_bad_files() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dim":2,"unitary":[[[1,0],[1,0]],[[0,0],[1,0]]]}"#).unwrap();
    let r = cgpkit(&["exact", path_str(&bad)]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("unitarity check failed"), "{}", r.stderr);

    std::fs::write(
        &bad,
        r#"{"dim":2,"unitary":[[[1,0],[0,0]],[[0,0],["x",0]]]}"#,
    )
    .unwrap();
    let r = cgpkit(&["exact", path_str(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("bad.json"), "{}", r.stderr);
    assert!(r.stderr.contains("row 1, column 1"), "{}", r.stderr);

    let r = cgpkit(&["exact", path_str(&dir.path().join("missing.json"))]);
    assert_eq!(r.code, 5);
}

#[test]
fn estimate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let h = gate_file(&dir, "hadamard");
    let base = [
        "estimate",
        h.as_str(),
        "--samples",
        "100000",
        "--seed",
        "42",
    ];
    let a = cgpkit(&base);
    assert_eq!(a.code, 0, "{}", a.stderr);
    let v = json(&a.stdout);
    let (mean, se) = (
        v["mean"].as_f64().unwrap(),
        v["std_error"].as_f64().unwrap(),
    );
    assert!((mean - (2f64.ln() - 0.5)).abs() <= 4.0 * se);
    assert_eq!(v["samples"], 100_000);
    assert_eq!(v["seed"], 42);

    let again = cgpkit(&base);
    assert_eq!(a.stdout, again.stdout);
    for w in ["1", "3", "8"] {
        let mut args = base.to_vec();
        args.extend(["--workers", w]);
        assert_eq!(cgpkit(&args).stdout, a.stdout);
    }
}

#[test]
fn estimate_seed_from_environment() {
    let dir = TempDir::new().unwrap();
    let h = gate_file(&dir, "hadamard");
    let explicit = cgpkit(&["estimate", &h, "--samples", "1000", "--seed", "9"]);
    let from_env = cgpkit_env(&["estimate", &h, "--samples", "1000"], Some("9"));
    assert_eq!(explicit.stdout, from_env.stdout);
    let overridden = cgpkit_env(
        &["estimate", &h, "--samples", "1000", "--seed", "9"],
        Some("5"),
    );
    assert_eq!(explicit.stdout, overridden.stdout);
    assert_eq!(json(&overridden.stdout)["seed"], 9);
}

#[test]
fn estimate_identity_and_errors() {
    let dir = TempDir::new().unwrap();
    let id = gate_file(&dir, "identity:3");
    let v = json(&cgpkit(&["estimate", &id, "--samples", "1000"]).stdout);
    assert_eq!(v["mean"].as_f64(), Some(0.0));
    assert_eq!(v["std_error"].as_f64(), Some(0.0));

    assert_eq!(cgpkit(&["estimate", &id, "--samples", "10"]).code, 2);

    let not_tp = dir.path().join("not_tp.json");
    std::fs::write(
        &not_tp,
        r#"{"dim":2,"kraus":[[[[1,0],[0,0]],[[0,0],[0.5,0]]]]}"#,
    )
    .unwrap();
    assert_eq!(cgpkit(&["estimate", path_str(&not_tp)]).code, 3);
}

#[test]
fn bound_examples() {
    let dir = TempDir::new().unwrap();
    let mix = KrausChannel::mixture_of_unitaries(
        &ProbabilityVector::uniform(2),
        &[
            make_gate(&GateSpec::Identity(2)).unwrap(),
            make_gate(&GateSpec::Hadamard).unwrap(),
        ],
    )
    .unwrap();
    let mix_path = dir.path().join("mix.json");
    write_channel(&mix_path, &mix).unwrap();
    let r = cgpkit(&["bound", path_str(&mix_path)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r.stdout);
    assert!((v["bound"].as_f64().unwrap() - 0.150_355_536_368_267_2).abs() < 1e-12);
    assert_eq!(v["unital"], true);

    let h = gate_file(&dir, "hadamard");
    let bound = json(&cgpkit(&["bound", &h]).stdout)["bound"]
        .as_f64()
        .unwrap();
    let exact = json(&cgpkit(&["exact", &h]).stdout)["cgp"]
        .as_f64()
        .unwrap();
    assert_eq!(bound, exact);

    let ad = dir.path().join("ad.json");
    write_channel(&ad, &KrausChannel::amplitude_damping(0.3).unwrap()).unwrap();
    let r = cgpkit(&["bound", path_str(&ad)]);
    assert_eq!(r.code, 4);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("not unital"), "{}", r.stderr);
}

fn read_sweep(path: &Path) -> Vec<(f64, f64)> {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("param,cgp"));
    lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

#[test]
fn sweeps() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("rot.csv");
    let pi = std::f64::consts::PI.to_string();
    let r = cgpkit(&[
        "sweep",
        "--gate",
        "rotation",
        "--from",
        "0",
        "--to",
        &pi,
        "--steps",
        "181",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rows = read_sweep(&out);
    assert_eq!(rows.len(), 181);
    assert!(rows.windows(2).all(|w| w[0].0 < w[1].0));
    for k in [0, 90, 180] {
        assert!(rows[k].1.abs() < 1e-10);
    }
    for k in [45, 135] {
        assert!((rows[k].1 - 0.193_147_180_559_945_3).abs() < 1e-9);
    }

    let out = dir.path().join("swap.csv");
    let r = cgpkit(&[
        "sweep",
        "--gate",
        "partial-swap",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "101",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(r.code, 0);
    let rows = read_sweep(&out);
    assert_eq!(rows.len(), 101);
    assert!(rows[0].1.abs() < 1e-10 && rows[100].1.abs() < 1e-10);
    assert!((rows[50].1 - 0.096_573_590_279_972_6).abs() < 1e-9);

    let r = cgpkit(&[
        "sweep",
        "--gate",
        "partial-swap",
        "--from",
        "0",
        "--to",
        "2",
        "--steps",
        "5",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(r.code, 2);
    let r = cgpkit(&[
        "sweep",
        "--gate",
        "rotation",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "5",
        "--out",
        "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(r.code, 5);
}

#[test]
fn gate_files_round_trip() {
    let dir = TempDir::new().unwrap();
    for name in [
        "hadamard",
        "rotation:0.7853",
        "partial-swap:0.5",
        "sqrt-swap",
        "swap:3",
        "fourier:5",
        "identity:2",
    ] {
        let path = gate_file(&dir, name);
        let u = read_unitary(Path::new(&path)).unwrap();
        let expected = make_gate(&name.parse().unwrap()).unwrap();
        assert_eq!(u, expected, "{name}");
        assert_eq!(cgpkit(&["exact", &path]).code, 0);
    }

    let path = gate_file(&dir, "sqrt-swap");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text,
        "{\"dim\":4,\"unitary\":[[[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]],\
         [[0.0,0.0],[0.5,0.5],[0.5,-0.5],[0.0,0.0]],\
         [[0.0,0.0],[0.5,-0.5],[0.5,0.5],[0.0,0.0]],\
         [[0.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0]]]}\n"
    );

    let out = dir.path().join("x.json");
    assert_eq!(
        cgpkit(&["gate", "toffoli", "--out", path_str(&out)]).code,
        2
    );
    assert_eq!(
        cgpkit(&["gate", "rotation:abc", "--out", path_str(&out)]).code,
        2
    );
    assert!(!out.exists());
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = cgpkit(&["verify", "--seed", "0"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    let reports = json(&a.stdout);
    let list = reports.as_array().unwrap();
    assert!(list.len() > 20);
    for r in list {
        assert_eq!(r["passed"], true, "{r}");
        for key in [
            "name",
            "lhs",
            "rhs",
            "abs_diff",
            "tolerance",
            "samples",
            "seed",
        ] {
            assert!(r.get(key).is_some(), "{key} missing");
        }
    }
    assert_eq!(cgpkit(&["verify", "--seed", "0"]).stdout, a.stdout);
}

#[test]
fn usage_errors() {
    assert_eq!(cgpkit(&[]).code, 2);
    assert_eq!(cgpkit(&["exact"]).code, 2);
    assert_eq!(cgpkit(&["exact", "x.json", "--format", "xml"]).code, 2);
    let r = cgpkit(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("verify"));
}

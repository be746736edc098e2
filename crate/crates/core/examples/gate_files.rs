//! Writes gate files, reads them back, and evaluates them the way the
//! command-line tool does.
//!
//! cargo run --example gate_files

use cgpkit::cli::{cmd_exact, cmd_gate, Format};

fn main() {
    let dir = std::env::temp_dir().join("cgpkit-gate-files");
    std::fs::create_dir_all(&dir).unwrap();
    for name in [
        "hadamard",
        "fourier:4",
        "sqrt-swap",
        "rotation:0.4",
        "partial-swap:0.25",
    ] {
        let path = dir.join(format!("{}.json", name.replace(':', "_")));
        let out = cmd_gate(name, &path);
        assert_eq!(out.code, 0, "{}", out.stderr);
        print!("{name:<20} {}", cmd_exact(&path, Format::Json).stdout);
    }

    let bad = dir.join("not_unitary.json");
    std::fs::write(&bad, r#"{"dim":2,"unitary":[[[1,0],[1,0]],[[0,0],[1,0]]]}"#).unwrap();
    let out = cmd_exact(&bad, Format::Json);
    print!("exit {}: {}", out.code, out.stderr);
}

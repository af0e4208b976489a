//! End-to-end runs of the `wulff` binary.

use std::path::Path;
use std::process::{Command, Output};

fn wulff(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wulff"))
        .args(args)
        .env("WULFF_OUT_DIR", dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn manifest(dir: &Path, name: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join(format!("{name}.manifest.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn l1_tension_gives_the_square() {
    let dir = tempfile::tempdir().unwrap();
    let o = wulff(dir.path(), &["wulff", "--tau", "l1", "--resolution", "3600", "--emit", "shape.svg,shape.csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(dir.path().join("shape.svg")).unwrap();
    assert!(svg.contains("viewBox=\"-1.69705627 -1.69705627 3.39411255 3.39411255\""));
    let csv = std::fs::read_to_string(dir.path().join("shape.csv")).unwrap();
    assert!(csv.starts_with("x,y\n"));
    for line in csv.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((v[0].abs().max(v[1].abs()) - 1.0).abs() < 1e-8, "{line}");
    }
    let m = manifest(dir.path(), "wulff");
    assert_eq!(m["subcommand"], "wulff");
    assert_eq!(m["parameters"]["tau"], "l1");
    assert_eq!(m["outputs"].as_object().unwrap().len(), 2);
}

#[test]
fn pedestal_polynomial_of_the_cube() {
    let dir = tempfile::tempdir().unwrap();
    let o = wulff(dir.path(), &["skyscraper", "--shape", "2x2x2", "--pedestal-poly", "--series-degree", "10", "--emit", "coeffs.csv,polynomial.json"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1 + 2x^2 + 2x^3 + 3x^4 + 3x^5 + 5x^6 + 4x^7 + 8x^8 + 4x^9 + 5x^10 + 3x^11 + 3x^12 + 2x^13 + 2x^14 + x^16"));
    let csv = std::fs::read_to_string(dir.path().join("coeffs.csv")).unwrap();
    assert_eq!(csv.lines().nth(11), Some("10,230"));
    let poly: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("polynomial.json")).unwrap()).unwrap();
    assert_eq!(poly["degree"], 16);
    assert_eq!(poly["value_at_one"], 48);
    assert_eq!(poly["coefficients"].as_array().unwrap().len(), 17);
}

#[test]
fn hole_from_json() {
    let dir = tempfile::tempdir().unwrap();
    let hole = dir.path().join("hole.json");
    std::fs::write(&hole, "[2, 1]").unwrap();
    let o = wulff(dir.path(), &["skyscraper", "--shape", "3x3", "--hole", hole.to_str().unwrap(), "--series-degree", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1 + 3x + 6x^2 + 12x^3"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(wulff(dir.path(), &["nonsense"]).status.code(), Some(2));
    assert_eq!(wulff(dir.path(), &["wulff", "--dim", "7"]).status.code(), Some(2));
    assert_eq!(wulff(dir.path(), &["wulff", "--emit", "shape.png"]).status.code(), Some(2));
    assert_eq!(wulff(dir.path(), &["skyscraper", "--shape", "5x5x5"]).status.code(), Some(1));
    assert_eq!(wulff(dir.path(), &["wulff", "--resolution", "4"]).status.code(), Some(1));
    assert_eq!(wulff(dir.path(), &["verify", "--criterion", "5"]).status.code(), Some(0));
}

#[test]
fn config_seeds_flags_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# ising run\nsize = 8\nsweeps = 5\nbeta = 0.4\nseed = 11\nemit = trace.csv\n").unwrap();
    let o = wulff(dir.path(), &["ising", "--config", cfg.to_str().unwrap(), "--sweeps", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = manifest(dir.path(), "ising");
    assert_eq!(m["parameters"]["size"], 8);
    assert_eq!(m["parameters"]["sweeps"], 7);
    assert_eq!(m["seed"], 11);
    let trace = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert_eq!(trace.lines().count(), 1 + 8);
}

#[test]
fn manifest_replay_reproduces_digests() {
    let first = tempfile::tempdir().unwrap();
    let o = wulff(first.path(), &["ising", "--size", "12", "--sweeps", "20", "--seed", "5", "--field", "-0.2", "--emit", "trace.csv,state.pgm"]);
    assert!(o.status.success());
    let second = tempfile::tempdir().unwrap();
    let path = first.path().join("ising.manifest.json");
    let o = wulff(second.path(), &["ising", "--config", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (a, b) = (manifest(first.path(), "ising"), manifest(second.path(), "ising"));
    assert_eq!(a["outputs"], b["outputs"]);
    assert_eq!(a["parameters"], b["parameters"]);
}

#[test]
fn samples_record_their_seed() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str| {
        let o = wulff(dir.path(), &["sample", "--n-target", "400", "--samples", "10", "--seed", seed, "--emit", "stats.json,overlay.svg,profiles.csv"]);
        assert!(o.status.success());
        manifest(dir.path(), "sample")
    };
    let a = run("1");
    let b = run("1");
    let c = run("2");
    assert_eq!(a["outputs"], b["outputs"]);
    assert_ne!(a["outputs"]["stats.json"], c["outputs"]["stats.json"]);
    assert_eq!(c["seed"], 2);
    let o = wulff(dir.path(), &["sample", "--model", "plane", "--n-target", "50", "--emit", "overlay.svg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ising_snapshots_are_greymaps() {
    let dir = tempfile::tempdir().unwrap();
    let o = wulff(dir.path(), &["ising", "--size", "6", "--topology", "box", "--bc", "split:0,1", "--sweeps", "4", "--snapshot-every", "2", "--emit", "s.pgm"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for sweep in [0, 2, 4] {
        let pgm = std::fs::read_to_string(dir.path().join(format!("s_{sweep:06}.pgm"))).unwrap();
        let mut lines = pgm.lines();
        assert_eq!(lines.next(), Some("P2"));
        assert_eq!(lines.next(), Some("6 6"));
        assert_eq!(lines.next(), Some("255"));
        assert_eq!(lines.count(), 6);
    }
}

#[test]
fn partitions_json_lists() {
    let dir = tempfile::tempdir().unwrap();
    let o = wulff(dir.path(), &["partitions", "--kind", "strict", "--list", "6", "--emit", "p.json,c.csv"]);
    assert!(o.status.success());
    let lists: Vec<Vec<u32>> =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("p.json")).unwrap()).unwrap();
    assert_eq!(lists.len(), 4);
    assert!(lists.contains(&vec![3, 2, 1]));
}

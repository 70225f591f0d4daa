//! End-to-end runs of the `linchaos` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn linchaos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linchaos")).args(args).output().expect("binary runs")
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn witness_run_passes() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("w");
    let run = linchaos(&[
        "witness",
        "--weights",
        "constant(2)",
        "--gamma",
        "1.5",
        "--m",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    let r = report(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "witness");
    assert_eq!(r["pass"], true);
    assert_eq!(r["result"]["pass"], true);
    assert_eq!(r["result"]["m"], 5);
    for key in ["gamma", "witness_support", "orbit_norms", "decay_index"] {
        assert!(!r["result"][key].is_null(), "missing {key}");
    }
    let csv = std::fs::read_to_string(out.join("data.csv")).unwrap();
    assert!(csv.starts_with("i,norm\n"));
}

#[test]
fn scramble_run_reports_one_pair() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("s");
    let run = linchaos(&[
        "scramble",
        "--weights",
        "constant(2)",
        "--gamma",
        "1.5",
        "--depth",
        "4",
        "--pairs",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    let r = report(&out);
    let pairs = r["result"]["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 1);
    let pair = &pairs[0]["report"];
    assert_eq!(pair["all_pass"], true);
    for list in ["lower_checks", "upper_checks"] {
        assert!(pair[list].as_array().unwrap().iter().all(|c| c["pass"] == true));
    }
    assert_eq!(r["result"]["invariants"]["all_pass"], true);
    let csv = std::fs::read_to_string(out.join("data.csv")).unwrap();
    assert!(csv.starts_with("n,tau,F\n"));
    assert_eq!(csv.lines().count(), 1 + 4);
}

#[test]
fn gamma_outside_the_disk_fails_with_the_diagnostic() {
    let tmp = TempDir::new().unwrap();
    let run = linchaos(&["witness", "--gamma", "3", "--m", "5", "--out", tmp.path().to_str().unwrap()]);
    assert_ne!(run.status.code(), Some(0));
    assert!(stderr(&run).contains("gamma exceeds eigen disk radius"), "{}", stderr(&run));
    assert!(!tmp.path().join("report.json").exists());
}

#[test]
fn invalid_config_names_the_field() {
    let tmp = TempDir::new().unwrap();
    let cases = [
        ("[witness]\ngamma = 0.5\n", "witness.gamma"),
        ("[stats]\nwindow = [4, 2]\n", "stats.window"),
        ("[scramble]\ndepth = 0\n", "scramble.depth"),
        ("[mixing]\neps = -1.0\n", "mixing.eps"),
        ("[witness]\ngama = 1.5\n", "gama"),
    ];
    for (text, field) in cases {
        let path = tmp.path().join("bad.toml");
        std::fs::write(&path, text).unwrap();
        let run = linchaos(&["--config", path.to_str().unwrap(), "witness", "--out", tmp.path().to_str().unwrap()]);
        assert_eq!(run.status.code(), Some(2), "{text}");
        assert!(stderr(&run).contains(field), "{text}: {}", stderr(&run));
    }
}

#[test]
fn identical_configs_give_identical_bytes() {
    let tmp = TempDir::new().unwrap();
    let args = |dir: &str| {
        vec!["eigen", "--omega-re", "0.4", "--omega-im", "-0.7", "--sweep", "12", "--seed", "99", "--out", dir]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>()
    };
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        let owned = args(dir.to_str().unwrap());
        let run = linchaos(&owned.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    }
    for file in ["report.json", "data.csv"] {
        let (x, y) = (std::fs::read(a.join(file)).unwrap(), std::fs::read(b.join(file)).unwrap());
        let (rx, ry) = (String::from_utf8_lossy(&x), String::from_utf8_lossy(&y));
        // only the output directory differs between the two runs
        assert_eq!(rx.replace(a.to_str().unwrap(), "OUT"), ry.replace(b.to_str().unwrap(), "OUT"), "{file}");
    }
}

#[test]
fn flags_override_the_config_file() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("exp.toml");
    let out = tmp.path().join("o");
    std::fs::write(
        &path,
        format!("weights = \"constant(3)\"\nout_dir = {:?}\n\n[witness]\ngamma = 2.5\nm = 4\n", out.to_str().unwrap()),
    )
    .unwrap();
    let run = linchaos(&["--config", path.to_str().unwrap(), "witness", "--m", "7"]);
    assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    let r = report(&out);
    assert_eq!(r["config"]["weights"], "constant(3)");
    assert_eq!(r["config"]["witness"]["gamma"], 2.5);
    assert_eq!(r["config"]["witness"]["m"], 7);
    assert_eq!(r["result"]["m"], 7);
}

#[test]
fn every_command_runs_with_defaults() {
    let tmp = TempDir::new().unwrap();
    for cmd in ["orbit", "eigen", "radius", "mixing", "periodic", "witness", "scramble", "stats"] {
        let out = tmp.path().join(cmd);
        let run = linchaos(&[cmd, "--out", out.to_str().unwrap()]);
        assert_eq!(run.status.code(), Some(0), "{cmd}: {}", stderr(&run));
        let r = report(&out);
        assert_eq!(r["command"], cmd);
        assert_eq!(r["pass"], true);
        assert!(out.join("data.csv").exists());
    }
}

#[test]
fn failed_checks_exit_with_one() {
    let tmp = TempDir::new().unwrap();
    // a mixing tolerance too small for the truncation cannot be certified
    let run = linchaos(&["mixing", "--eps", "1e-9", "--trunc-len", "30", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(1), "{}", stderr(&run));
    let r = report(tmp.path());
    assert_eq!(r["pass"], false);
    assert_eq!(r["result"]["certified"], false);
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("FAIL"));
}

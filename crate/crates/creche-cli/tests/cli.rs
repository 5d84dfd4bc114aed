// SPDX-License-Identifier: MIT OR Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn creche(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_creche")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn generate_change_file(dir: &Path) -> String {
    let path = dir.join("change.txt");
    let p = path.to_str().unwrap().to_string();
    json(&creche(&[
        "generate",
        "--probs",
        "0.1,0.3,0.6",
        "--right",
        r#"{"type":"iid","probs":[0.5,0.25,0.25]}"#,
        "-n",
        "50000",
        "--gamma",
        "0.2",
        "--seed",
        "11",
        "--out",
        &p,
    ]));
    p
}

#[test]
fn detect_finds_synthetic_change() {
    let dir = tempfile::tempdir().unwrap();
    let file = generate_change_file(dir.path());
    let curve = dir.path().join("curve.csv");
    let v = json(&creche(&["detect", &file, "--seed", "7", "--curve", curve.to_str().unwrap()]));
    assert_eq!(v["n"], 50_000);
    let g = v["gamma_hat"].as_f64().unwrap();
    assert!((g - 0.2).abs() <= 0.03, "{g}");
    let text = std::fs::read_to_string(curve).unwrap();
    assert_eq!(text.lines().count(), 50_000);
    assert!(text.starts_with("j,c_lr,c_rl,psi_lr,psi_rl,psi\n"));
}

#[test]
fn detect_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = generate_change_file(dir.path());
    let a = creche(&["detect", &file, "--seed", "7"]);
    let b = creche(&["detect", &file, "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn detect_rejects_single_symbol() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("one.txt");
    std::fs::write(&f, "x").unwrap();
    let out = creche(&["detect", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too short"));
    let missing = creche(&["detect", "/nonexistent/file"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn detect_reads_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_creche"))
        .args(["detect", "-", "--policy", "lowercase-letters"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"abababababab cdcdcdcdcdcd").unwrap();
    let v = json(&child.wait_with_output().unwrap());
    assert_eq!(v["n"], 24);
    assert_eq!(v["alphabet_size"], 26);
    assert_eq!(v["j_star"], 12);
}

#[test]
fn invalid_parameters_are_usage_errors() {
    for args in [
        &["simulate", "model-b", "--gamma", "1.5"][..],
        &["simulate", "null", "--alpha", "1.0"],
        &["simulate", "null", "--trials", "0"],
        &["detect", "--bogus"],
        &["generate", "--probs", "0.5,0.6", "-n", "10", "--out", "/tmp/x"],
    ] {
        let out = creche(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn simulate_model_b_writes_overlay() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mb");
    let v = json(&creche(&[
        "simulate", "model-b", "-n", "2000", "--trials", "40", "--seed", "3", "--out", out.to_str().unwrap(),
    ]));
    assert_eq!(v["change_index"], 800);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    let curve = std::fs::read_to_string(out.join("curve.csv")).unwrap();
    assert!(curve.starts_with("j,c_lr,c_rl,psi_lr,psi_rl,psi,mean_lr,mean_rl,mean_psi\n"));
    assert_eq!(curve.lines().count(), 2000);
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["tool"], "creche");
    assert_eq!(manifest["seed"], 3);
}

#[test]
fn simulate_null_respects_bound() {
    let v = json(&creche(&["simulate", "null", "-n", "4000", "--trials", "300", "--seed", "2"]));
    assert_eq!(v["within_bound"], true);
    assert!((v["band_bound"].as_f64().unwrap() - 0.25 / 4.5).abs() < 1e-12);
}

#[test]
fn output_is_independent_of_threads() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let out = dir.path().join(name);
        json(&creche(&[
            "--threads", threads, "simulate", "model-b", "-n", "1500", "--trials", "130", "--seed", "9", "--format",
            "json", "--out", out.to_str().unwrap(),
        ]));
        std::fs::read(out.join("results.json")).unwrap()
    };
    assert_eq!(run("1", "a"), run("3", "b"));
}

#[test]
fn experiment_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"kind":"graph-a-synthetic","left":{"type":"iid","probs":[0.1,0.3,0.6]},"right":{"type":"iid","probs":[0.5,0.25,0.25]},"n":5000,"gamma":0.3,"trials":12,"seed":4}"#,
    )
    .unwrap();
    let out = dir.path().join("run");
    let v = json(&creche(&["experiment", spec.to_str().unwrap(), "--out", out.to_str().unwrap()]));
    assert_eq!(v["histogram_total"], 12);
    for f in ["manifest.json", "histogram.csv", "mean_curve.csv", "estimates.csv"] {
        assert!(out.join(f).is_file(), "{f}");
    }
    std::fs::write(&spec, r#"{"kind":"null","n":100,"trials":0}"#).unwrap();
    assert_eq!(creche(&["experiment", spec.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn entropy_and_concat() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    std::fs::write(&a, "0".repeat(100)).unwrap();
    std::fs::write(&b, "01".repeat(50)).unwrap();
    let v = json(&creche(&["entropy", a.to_str().unwrap()]));
    assert!(v["bits_per_symbol"].as_f64().unwrap() < 0.2);
    let joined = dir.path().join("ab.txt");
    let v = json(&creche(&["concat", a.to_str().unwrap(), b.to_str().unwrap(), "--out", joined.to_str().unwrap()]));
    assert_eq!(v["change_index"], 100);
    assert_eq!(v["n"], 200);
    assert_eq!(std::fs::read(&joined).unwrap().len(), 200);
    let short = dir.path().join("s.txt");
    std::fs::write(&short, "abc").unwrap();
    assert_eq!(creche(&["entropy", short.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn every_subcommand_has_help() {
    for sub in ["detect", "simulate", "experiment", "entropy", "concat", "generate"] {
        let out = creche(&[sub, "--help"]);
        assert!(out.status.success(), "{sub}");
        assert!(!out.stdout.is_empty());
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use satmat_core::saturation::is_saturating;
use satmat_core::{HostMatrix, Pattern};
use serde_json::Value;
use tempfile::TempDir;

fn satmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satmat"))
        .args(args)
        .env_remove("SATMAT_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = satmat(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().unwrap(), v)
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn rows(v: &Value) -> String {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_str().unwrap())
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn sat_of_identity_2() {
    let dir = TempDir::new().unwrap();
    let i2 = write(&dir, "I2.txt", "10\n01\n");
    let (code, v) = json(&["sat", "--pattern", s(&i2), "--rows", "3", "--cols", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["value"], 5);
    assert_eq!(v["results"]["optimal"], true);
    for key in ["command", "inputs", "results", "checks", "timing", "budget"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let cert = HostMatrix::parse(&rows(&v["results"]["certificate"])).unwrap();
    assert!(is_saturating(&cert, &Pattern::parse("10\n01").unwrap()).unwrap());
    assert_eq!(cert.weight(), 5);

    let text = satmat(&["sat", "--pattern", s(&i2), "--rows", "3", "--cols", "3"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("value: 5"));
}

#[test]
fn ssat_classify_q_is_constant() {
    let (code, v) = json(&["ssat-classify", "--pattern", "@Q"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["verdict"], "Constant");
    assert_eq!(v["checks"][0]["status"], "pass");
}

#[test]
fn exhausted_budget_exits_2_with_bounds() {
    let (code, v) = json(&[
        "sat", "--pattern", "@J4", "--rows", "6", "--cols", "6", "--budget-nodes", "2000",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["results"]["optimal"], false);
    assert_eq!(v["budget"]["exhausted"], true);
    let lower = v["results"]["bounds"]["lower"].as_u64().unwrap();
    let upper = v["results"]["bounds"]["upper"].as_u64().unwrap();
    assert!(lower <= 27 && 27 <= upper);
}

#[test]
fn input_errors_exit_1_and_name_the_input() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "101\n1x1\n");
    let out = satmat(&["sat", "--pattern", s(&bad), "--rows", "3", "--cols", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.txt") && err.contains("line 2"), "{err}");
    assert!(String::from_utf8_lossy(&out.stdout).contains("error:"));

    let ragged = write(&dir, "ragged.txt", "10\n1\n");
    let out = satmat(&["contains", "--pattern", "@I2", "--matrix", s(&ragged)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ragged.txt"));

    assert_eq!(satmat(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(satmat(&["sat", "--pattern", "@I2", "--bogus"]).status.code(), Some(1));
    assert_eq!(satmat(&["sat", "--pattern", "@X9", "--rows", "2", "--cols", "2"]).status.code(), Some(1));
    assert_eq!(satmat(&["--help"]).status.code(), Some(0));
}

#[test]
fn all_zero_pattern_is_rejected() {
    let dir = TempDir::new().unwrap();
    let zero = write(&dir, "zero.txt", "00\n00\n");
    let (code, v) = json(&["ex", "--pattern", s(&zero), "--rows", "2", "--cols", "2"]);
    assert_eq!(code, 1);
    assert!(v["results"]["error"].as_str().unwrap().contains("all-zero"));
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["witness-search", "--pattern", "@Q", "--seed", "3"];
    let (_, mut a) = json(&args);
    let (_, mut b) = json(&args);
    a["timing"] = Value::Null;
    b["timing"] = Value::Null;
    assert_eq!(a, b);
    assert_eq!(a["results"]["found"], true);
}

#[test]
fn report_to_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let o = satmat(&["ssat-classify", "--pattern", "@I3", "--format", "json", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["command"], "ssat-classify");
}

#[test]
fn containment_and_occurrences() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.txt", "110\n011\n");
    let (code, v) = json(&["contains", "--pattern", "@I2", "--matrix", s(&m)]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["contains"], true);
    assert_eq!(v["results"]["occurrence"]["rows"], serde_json::json!([1, 2]));
    let (_, v) = json(&["occurrences", "--pattern", "@I2", "--matrix", s(&m)]);
    assert_eq!(v["results"]["count"], 3);
    let (_, v) = json(&["occurrences", "--pattern", "@I2", "--matrix", s(&m), "--limit", "1"]);
    assert_eq!(v["results"]["truncated"], true);
}

#[test]
fn constructions_and_staircases() {
    let (code, v) = json(&["construct", "--name", "jk-reflected", "--k", "5"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&v["results"]["matrix"]), "00010\n00100\n01000\n10000\n00001");

    let (code, v) = json(&[
        "construct", "--name", "frame", "--pattern", "@J4", "--rows", "6", "--cols", "7", "--pivot", "4,1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["weight"], 3 * 7 + 3 * 6 - 9);
    assert_eq!(v["checks"][0]["status"], "pass");

    let dir = TempDir::new().unwrap();
    let frame = write(&dir, "frame.txt", "001\n001\n111\n");
    let (code, v) = json(&["staircase", "--matrix", s(&frame)]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["size"], 5);
    assert_eq!(v["results"]["below_zero"], true);

    let (code, v) = json(&["reduce", "--pattern", "@I2", "--matrix", s(&frame)]);
    assert_eq!(code, 0);
    assert_eq!(rows(&v["results"]["matrix"]), "00\n00");
    let zeros = write(&dir, "zeros.txt", "00\n00\n");
    let (code, v) = json(&["extend", "--pattern", "@I1", "--matrix", s(&zeros)]);
    assert_eq!(code, 0);
    assert_eq!(rows(&v["results"]["matrix"]), "001\n001\n111");

    let (code, _) = json(&["reduce", "--pattern", "@I2", "--matrix", s(&zeros)]);
    assert_eq!(code, 1);
}

#[test]
fn level_report_for_jk_reflected_3() {
    let dir = TempDir::new().unwrap();
    let (_, v) = json(&["sat", "--pattern", "@J'3", "--rows", "4", "--cols", "4"]);
    let cert = write(&dir, "cert.txt", &rows(&v["results"]["certificate"]));
    let (code, v) = json(&["levels", "--matrix", s(&cert), "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn witnesses_and_pumping() {
    let dir = TempDir::new().unwrap();
    let (code, v) = json(&["witness-search", "--pattern", "@Q"]);
    assert_eq!(code, 0);
    let w = write(&dir, "w.txt", &rows(&v["results"]["certificate"]["matrix"]));
    assert!(v["results"]["certificate"]["weight"].as_u64().unwrap() < 400);

    let (code, v) = json(&["witness-check", "--pattern", "@Q", "--matrix", s(&w)]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["witness"], true);

    let (code, v) = json(&["pump", "--pattern", "@Q", "--matrix", s(&w), "--t", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["status"], "pass");
    let grown = HostMatrix::parse(&rows(&v["results"]["matrix"])).unwrap();
    assert!(is_saturating(&grown, &satmat_core::constructions::pattern_q()).unwrap());

    let (code, v) = json(&["witness-check", "--pattern", "@I2", "--matrix", s(&w)]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["witness"], false);
}

#[test]
fn sat_classification() {
    let (code, v) = json(&["classify", "--pattern", "@Q'"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["verdict"], "Linear");
    assert_eq!(v["results"]["rule"], "zero-first-column");

    let (code, v) = json(&["classify", "--pattern", "@I1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["verdict"], "Constant");

    let (code, v) = json(&["classify", "--pattern", "@J4", "--budget-seconds", "2"]);
    assert_eq!(code, 2);
    assert_eq!(v["results"]["verdict"], "Unknown");
}

#[test]
fn verify_scope_ik() {
    let (code, v) = json(&["verify", "ik"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
}

#[test]
fn thread_cap_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_satmat"))
        .args(["verify", "ik"])
        .env("SATMAT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SATMAT_THREADS"));
    let out = Command::new(env!("CARGO_BIN_EXE_satmat"))
        .args(["verify", "ik"])
        .env("SATMAT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

use std::process::{Command, Output};

use dgalab::dga::Dga;
use dgalab::linalg::Ring;

fn dgalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgalab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn homology_of_y2() {
    let o = dgalab(&["homology", "--builtin", "Y2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> =
        stdout(&o).lines().skip(2).map(|l| l.split_whitespace().nth(1).unwrap().to_string()).collect();
    assert_eq!(rows, ["Z/2", "0", "Z/2", "0"]);
}

#[test]
fn homology_of_endomorphism() {
    let o = dgalab(&["homology", "--builtin", "endomorphism", "--p", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    let groups: Vec<(i64, String)> = v["homology"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["degree"].as_i64().unwrap(), r["group"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(groups, [(-1, "F_5".to_string()), (0, "F_5".to_string()), (1, "0".to_string())]);
}

#[test]
fn homology_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unit.json");
    std::fs::write(&path, Dga::unit_dga(Ring::Integers).to_json()).unwrap();
    let o = dgalab(&["homology", "--file", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["homology"][0]["group"], "Z");
}

#[test]
fn invalid_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"ring\": 3}").unwrap();
    let o = dgalab(&["homology", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

fn hh_column(args: &[&str]) -> Vec<usize> {
    let o = dgalab(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    v["records"].as_array().unwrap().iter().map(|r| r["dimension"].as_u64().unwrap() as usize).collect()
}

#[test]
fn hh_tables() {
    assert_eq!(hh_column(&["hh", "--builtin", "Y2", "--p", "2", "--max-degree", "6", "--json"]), [1, 0, 1, 0, 0, 0, 1]);
    assert_eq!(
        hh_column(&["hh", "--builtin", "formal-poly", "--p", "2", "--max-degree", "7", "--json"]),
        [1, 0, 1, 1, 1, 1, 1, 1]
    );
}

#[test]
fn hh_closed_form_bidegrees() {
    let o = dgalab(&["hh", "--closed-form", "--algebra", "exterior x 2", "--p", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let spots: Vec<(i64, i64)> = v["bigraded"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["s"].as_i64().unwrap(), s["t"].as_i64().unwrap()))
        .collect();
    assert_eq!(spots, [(0, 0), (1, 2), (2, 4)]);
}

#[test]
fn ss_chart_and_table() {
    let o = dgalab(&["ss", "--variant", "Y", "--p", "3", "--bound", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("γ3(στ0) -> σx"));
    let o = dgalab(&["ss", "--variant", "X", "--p", "3", "--m", "3", "--bound", "14", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let e: Vec<u64> = v["eInfinity"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    assert_eq!(e, [1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
    let o = dgalab(&["ss", "--variant", "Y", "--p", "3", "--bound", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["eInfinity"], serde_json::json!([1]));
}

#[test]
fn verify_core_passes() {
    let o = dgalab(&["verify", "--suite", "core"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("[PASS]").count(), 8);
}

#[test]
fn json_is_byte_identical() {
    let args = ["verify", "--suite", "properties", "--seed", "42", "--json"];
    let a = dgalab(&args);
    let b = dgalab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let single = Command::new(env!("CARGO_BIN_EXE_dgalab")).args(args).env("DGALAB_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, single.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["hh", "--builtin", "nope"][..],
        &["hh", "--builtin", "Y2", "--p", "4"],
        &["hh", "--closed-form", "--algebra", "poly x 3", "--p", "3"],
        &["ss", "--variant", "Q"],
        &["verify", "--suite", "everything"],
        &["homology"],
        &["bogus"],
    ] {
        assert_eq!(dgalab(args).status.code(), Some(2), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_dgalab"))
        .args(["--list-builtins"])
        .env("DGALAB_THREADS", "x")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lists_builtins() {
    let o = dgalab(&["--list-builtins"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert_eq!(names, ["Y2", "formal-poly", "endomorphism", "cone-p"]);
}

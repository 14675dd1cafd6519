//! End-to-end tests of the binary: golden reports, the exit-code contract,
//! determinism, and instance round-trips.

use std::path::Path;
use std::process::Command;

use assert_cmd::prelude::*;
use pretty_assertions::assert_eq;
use serde_json::Value;

use subpoly_cli::instance::{from_str, to_json};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_subpoly"));
    cmd.current_dir(env!("CARGO_MANIFEST_DIR"));
    cmd
}

/// Parse a report and zero out the wall time, the only nondeterministic field.
fn normalized(stdout: &[u8]) -> Value {
    let mut value: Value =
        serde_json::from_slice(stdout).expect("reports are valid JSON");
    value["wall_time_ms"] = Value::from(0.0);
    value
}

fn golden(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).expect("golden file exists"))
        .expect("golden files are valid JSON")
}

fn run_golden(args: &[&str], golden_name: &str, expected_exit: i32) {
    let output = bin().args(args).output().expect("binary runs");
    assert_eq!(output.status.code(), Some(expected_exit), "args: {args:?}");
    assert_eq!(normalized(&output.stdout), golden(golden_name), "args: {args:?}");
}

#[test]
fn golden_eval() {
    run_golden(
        &["eval", "--instance", "tests/fixtures/modular_small.json", "--set", "both"],
        "eval_modular_both.json",
        0,
    );
}

#[test]
fn golden_member_positive() {
    run_golden(
        &[
            "member",
            "--instance",
            "tests/fixtures/triangle_cut.json",
            "--poly",
            "superdiff",
            "--set",
            "X",
            "--point",
            "ghat",
        ],
        "member_superdiff_ghat.json",
        0,
    );
}

#[test]
fn golden_member_negative() {
    run_golden(
        &[
            "member",
            "--instance",
            "tests/fixtures/triangle_cut.json",
            "--poly",
            "inner-conv",
            "--set",
            "X",
            "--point",
            "zero",
        ],
        "member_innerconv_zero.json",
        2,
    );
}

#[test]
fn golden_certify() {
    run_golden(
        &[
            "certify",
            "--instance",
            "tests/fixtures/coverage_mono.json",
            "--kind",
            "global-min",
            "--set",
            "empty",
        ],
        "certify_globalmin_empty.json",
        0,
    );
}

#[test]
fn golden_third_max() {
    run_golden(
        &["third-max", "--instance", "tests/fixtures/triangle_cut.json"],
        "third_max_triangle.json",
        0,
    );
}

#[test]
fn golden_vertex() {
    run_golden(
        &["vertex", "--instance", "tests/fixtures/sqrt_unit3.json", "--perm", "0,1,2"],
        "vertex_sqrt3.json",
        0,
    );
}

#[test]
fn golden_validate_negative() {
    run_golden(
        &[
            "validate",
            "--instance",
            "tests/fixtures/square_honest.json",
            "--property",
            "submodularity",
        ],
        "validate_square.json",
        2,
    );
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "member",
        "--instance",
        "tests/fixtures/triangle_cut.json",
        "--poly",
        "superdiff",
        "--set",
        "X",
        "--point",
        "ghat",
    ];
    let first = bin().args(args).output().unwrap();
    let second = bin().args(args).output().unwrap();
    assert_eq!(normalized(&first.stdout), normalized(&second.stdout));
}

#[test]
fn exit_code_contract() {
    // 0: successful positive computation
    bin()
        .args(["eval", "--instance", "tests/fixtures/modular_small.json", "--set", "empty"])
        .assert()
        .success();
    // 2: mathematical negative (failed certificate)
    let out = bin()
        .args([
            "certify",
            "--instance",
            "tests/fixtures/modular_small.json",
            "--kind",
            "global-min",
            "--set",
            "empty",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let report = normalized(&out.stdout);
    assert_eq!(report["status"], "negative");
    assert_eq!(report["result"]["holds"], Value::Bool(false));
    // witness names the violating superset {1} of the empty set
    assert_eq!(report["result"]["witness"]["set"], serde_json::json!([1]));

    // 1: errors of every stripe
    let cases: &[&[&str]] = &[
        &["eval", "--instance", "tests/fixtures/missing.json", "--set", "empty"],
        &["eval", "--instance", "tests/fixtures/modular_small.json", "--set", "nope"],
        &["validate", "--instance", "tests/fixtures/square_bad_flags.json", "--property", "submodularity"],
        &["vertex", "--instance", "tests/fixtures/square_honest.json", "--perm", "0,1,2,3"],
        &["member", "--instance", "tests/fixtures/triangle_cut.json", "--poly", "super-outer", "--set", "X", "--point", "zero"],
        &["not-a-command"],
    ];
    for args in cases {
        let out = bin().args(*args).output().unwrap();
        assert_eq!(out.status.code(), Some(1), "args: {args:?}");
        let report = normalized(&out.stdout);
        assert_eq!(report["status"], "error", "args: {args:?}");
        assert!(report["error"]["code"].is_string(), "args: {args:?}");
    }
}

#[test]
fn error_codes_are_stable() {
    let expectations = [
        (
            vec!["eval", "--instance", "tests/fixtures/missing.json", "--set", "empty"],
            "io",
        ),
        (
            vec!["eval", "--instance", "tests/fixtures/modular_small.json", "--set", "nope"],
            "missing_name",
        ),
        (
            vec![
                "validate",
                "--instance",
                "tests/fixtures/square_bad_flags.json",
                "--property",
                "submodularity",
            ],
            "validation",
        ),
        (
            vec![
                "vertex",
                "--instance",
                "tests/fixtures/square_honest.json",
                "--perm",
                "0,1,2,3",
            ],
            "precondition",
        ),
    ];
    for (args, code) in expectations {
        let out = bin().args(&args).output().unwrap();
        let report = normalized(&out.stdout);
        assert_eq!(report["error"]["code"], code, "args: {args:?}");
    }
}

#[test]
fn bad_flag_declaration_reports_property_and_counterexample() {
    let out = bin()
        .args([
            "eval",
            "--instance",
            "tests/fixtures/square_bad_flags.json",
            "--set",
            "empty",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report = normalized(&out.stdout);
    assert_eq!(report["error"]["code"], "validation");
    assert_eq!(report["error"]["data"]["property"], "submodularity");
    assert!(report["error"]["data"]["counterexample"].is_object());

    // --trust-flags skips the validation sweep
    bin()
        .args([
            "eval",
            "--trust-flags",
            "--instance",
            "tests/fixtures/square_bad_flags.json",
            "--set",
            "empty",
        ])
        .assert()
        .success();
}

#[test]
fn cap_env_var_guards_enumeration() {
    let out = bin()
        .env("SUBPOLY_CAP", "3")
        .args(["minimize", "--instance", "tests/fixtures/capped_card.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(normalized(&out.stdout)["error"]["code"], "cap_exceeded");
}

#[test]
fn round_trip_identity_on_all_fixtures() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut checked = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        if !name.ends_with(".json") || name.starts_with("sweep") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let loaded = from_str(&text, true).unwrap_or_else(|e| panic!("{name}: {e}"));
        let serialized = to_json(&loaded.file);
        let reloaded = from_str(&serialized, true).unwrap();
        assert_eq!(loaded.file, reloaded.file, "round trip changed {name}");
        checked += 1;
    }
    assert!(checked >= 6, "expected to cover the shipped fixtures, saw {checked}");
}

#[test]
fn sweep_stream_is_deterministic_and_clean() {
    let args = ["sweep", "--config", "tests/fixtures/sweep_ratio.json"];
    let first = bin().args(args).output().unwrap();
    let second = bin().args(args).output().unwrap();
    assert_eq!(first.status.code(), Some(0));

    let lines = |out: &[u8]| -> Vec<Value> {
        String::from_utf8_lossy(out)
            .lines()
            .map(|line| {
                let mut v: Value = serde_json::from_str(line).unwrap();
                v["wall_time_ms"] = Value::from(0.0);
                v
            })
            .collect()
    };
    let a = lines(&first.stdout);
    let b = lines(&second.stdout);
    assert_eq!(a, b, "fixed seed must give identical report streams");
    assert_eq!(a.len(), 26);
    let aggregate = &a[25]["result"];
    assert_eq!(aggregate["violations"], Value::from(0));
    assert!(aggregate["min_ratio"].as_f64().unwrap() >= 1.0 / 3.0);
}

#[test]
fn zero_repetition_sweep_is_empty() {
    let out = bin()
        .args(["sweep", "--config", "tests/fixtures/sweep_zero.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 1);
    let aggregate: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(aggregate["result"]["trials"], Value::from(0));
}

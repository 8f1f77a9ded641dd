//! Exit codes, reproducibility and the frozen genus-two certificate.

use std::path::PathBuf;
use std::process::{Command, Stdio};

use curve_reflexive::curve::validate_curve;
use curve_reflexive::divisor_search::find_good_divisor;
use curve_reflexive::pipeline::mask_timings;
use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_curve-reflexive"));
    cmd.stderr(Stdio::null());
    cmd
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn read_json(path: &PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn demo_g2_matches_golden_file() {
    let out = scratch("g2.json");
    let status = bin().args(["demo-g2", "--out"]).arg(&out).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let golden: Value = serde_json::from_str(include_str!("golden/demo_g2.json")).unwrap();
    assert_eq!(mask_timings(&read_json(&out)), mask_timings(&golden));
}

#[test]
fn identical_runs_are_byte_identical_up_to_timings() {
    let (a, b) = (scratch("det_a.json"), scratch("det_b.json"));
    for path in [&a, &b] {
        assert_eq!(
            bin()
                .args(["demo-g3", "--out"])
                .arg(path)
                .status()
                .unwrap()
                .code(),
            Some(0)
        );
    }
    let strip = |p: &PathBuf| {
        let text = std::fs::read_to_string(p).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        // the file itself must already be in canonical form
        assert_eq!(curve_reflexive::pipeline::canonical_json(&v), text);
        curve_reflexive::pipeline::canonical_json(&mask_timings(&v))
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn even_degree_is_a_config_error() {
    let out = bin()
        .args(["run", "--prime", "101", "--f", "x^4+1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_inputs_are_config_errors() {
    assert_eq!(bin().arg("run").status().unwrap().code(), Some(2));
    let cfg = scratch("bad.conf");
    std::fs::write(&cfg, "p = 101\nf = x^5+x+1\nwindow = 9\n").unwrap();
    assert_eq!(bin().arg("run").arg(&cfg).status().unwrap().code(), Some(2));
    assert_eq!(
        bin()
            .args(["run", "--prime", "100", "--f", "x^5+x+1"])
            .status()
            .unwrap()
            .code(),
        Some(2)
    );
}

#[test]
fn stage_failure_exits_one_with_document() {
    let curve = validate_curve(101, &[1, 1, 0, 0, 0, 1]).unwrap();
    let seed = (0..500u64)
        .find(|&s| find_good_divisor(&curve, s, 1).is_err())
        .unwrap();
    let cfg = scratch("fail.conf");
    std::fs::write(
        &cfg,
        format!("p = 101\nf = x^5 + x + 1\nseed = {seed}\nmax_tries = 1\n"),
    )
    .unwrap();
    let out = scratch("fail.json");
    let status = bin()
        .arg("run")
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    let doc = read_json(&out);
    assert_eq!(doc["verdict"], "FAIL");
    assert_eq!(doc["failed_stage"], "search");
}

#[test]
fn subcommands_stop_at_their_stage() {
    let cases = [
        ("validate", "divisor"),
        ("search", "graded_model"),
        ("build", "resolution"),
        ("verify", "artinian"),
    ];
    for (cmd, absent) in cases {
        let out = bin()
            .args([cmd, "--prime", "101", "--f", "1,1,0,0,0,1"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{cmd}");
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(doc["verdict"], "PASS");
        assert!(doc[absent].is_null(), "{cmd} should not produce {absent}");
    }
}

#[test]
fn config_file_and_overrides() {
    let cfg = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/demo_g2.conf");
    let out = bin()
        .arg("search")
        .arg(&cfg)
        .args(["--seed", "5", "--strong"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["seed"], 5);
    assert_eq!(doc["divisor"]["strong"], true);
}

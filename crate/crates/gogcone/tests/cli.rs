use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gogcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gogcone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = gogcone(args);
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

#[test]
fn reduce_to_identity() {
    let (code, r) = report(&[
        "gog",
        "reduce",
        "--graph",
        "bundled:zz",
        "--word",
        "a b b⁻¹ a⁻¹",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["normal_form"], "1");
    assert_eq!(r["result"]["identity"], true);
    let (_, r) = report(&[
        "gog",
        "reduce",
        "--graph",
        "bundled:bs12",
        "--word",
        "e a e^-1",
    ]);
    assert_eq!(r["result"]["normal_form"], "a^2");
}

#[test]
fn diagram_check_on_free_product() {
    let (code, r) = report(&[
        "qm",
        "diagram-check",
        "--graph",
        "bundled:zz",
        "--syllables",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["value_failure_count"], 0);
    assert_eq!(r["result"]["barycenter_failure_count"], 0);
    assert!(r["result"]["checked"].as_u64().unwrap() > 1000);
}

#[test]
fn defect_of_sign() {
    let (code, r) = report(&[
        "qm",
        "defect",
        "--graph",
        "bundled:zz",
        "--function",
        "w=zero",
        "--syllables",
        "4",
        "--exponent",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["defect"], "1");
}

#[test]
fn cone_compare_uw() {
    let (code, r) = report(&[
        "norm",
        "cone-compare",
        "--pair",
        "bundled:uw",
        "--theta",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["equal"], true);
    assert_eq!(r["result"]["cone"], r["result"]["relative"]);
}

#[test]
fn cone_fault_is_a_verification_failure() {
    let (code, r) = report(&[
        "norm",
        "cone-compare",
        "--pair",
        "bundled:uw",
        "--theta",
        "3",
        "--fault",
        "cone-sign",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r["passed"], false);
}

#[test]
fn seminorm_values() {
    for (pair, value) in [("circle", "3"), ("simplex", "1"), ("torus7", "14")] {
        let (code, r) = report(&[
            "norm",
            "seminorm",
            "--pair",
            &format!("bundled:{pair}"),
            "--theta",
            "0",
        ]);
        assert_eq!(code, 0, "{pair}");
        assert_eq!(r["result"]["value"], value, "{pair}");
    }
    let (_, r) = report(&[
        "norm",
        "seminorm",
        "--pair",
        "bundled:simplex",
        "--theta",
        "2",
    ]);
    assert_eq!(r["result"]["value"], "7");
    let (_, r) = report(&[
        "norm",
        "seminorm",
        "--pair",
        "bundled:simplex",
        "--theta",
        "inf",
    ]);
    assert_eq!(r["result"]["value"], "inf");
    let (code, r) = report(&[
        "norm",
        "duality",
        "--pair",
        "bundled:torus7",
        "--theta",
        "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["value"], "14");
}

#[test]
fn thurston_and_glue() {
    let (code, r) = report(&[
        "norm",
        "thurston",
        "--pair",
        "bundled:uw",
        "--epsilon",
        "1/2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["status"], "Success");
    assert_eq!(r["result"]["chain_norm"], "7/5");
    let (code, r) = report(&["glue", "--gluing", "bundled:annulus"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["correction_norm"], "6");
    assert_eq!(r["result"]["cycle_norm"], "18");
}

#[test]
fn tree_queries() {
    let (code, r) = report(&[
        "tree",
        "geodesic",
        "--graph",
        "bundled:zz",
        "--from",
        "1 @ v",
        "--to",
        "a b @ v",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["length"], 4);
    let (code, r) = report(&[
        "tree",
        "barycenter",
        "--graph",
        "bundled:zz",
        "1 @ v",
        "a @ w",
        "a^2 @ w",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["barycenter"], "1 @ v");
}

#[test]
fn transplant_verify_and_fault() {
    let args = [
        "transplant",
        "verify",
        "--graph",
        "bundled:trefoil",
        "--seed",
        "4",
        "--samples",
    ];
    let mut plain = args.to_vec();
    plain.push("300");
    let (code, r) = report(&plain);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["checked"], 300);
    let mut faulty = args.to_vec();
    faulty.extend(["2000", "--fault", "barycenter-candidates"]);
    let (code, r) = report(&faulty);
    assert_eq!(code, 1);
    assert!(
        r["result"]["failure_count"].as_u64().unwrap()
            + r["result"]["bound_violation_count"].as_u64().unwrap()
            > 0
    );
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = gogcone(&[
            "transplant",
            "verify",
            "--graph",
            "bundled:bs12",
            "--samples",
            "100",
            "--seed",
            "9",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let (_, timed) = report(&["gog", "check", "--graph", "bundled:zz", "--timing"]);
    assert!(timed["seconds"].is_number());
    let (_, plain) = report(&["gog", "check", "--graph", "bundled:zz"]);
    assert!(plain.get("seconds").is_none());
}

fn rejected(args: &[&str], out: &Path) {
    let mut all = args.to_vec();
    all.extend(["--out", out.to_str().unwrap()]);
    let o = gogcone(&all);
    assert_eq!(
        o.status.code(),
        Some(2),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(!out.exists(), "{args:?} wrote a report");
    assert!(!o.stderr.is_empty());
}

#[test]
fn input_errors_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ \"vertices\": [").unwrap();
    rejected(&["gog", "check", "--graph", bad.to_str().unwrap()], &out);
    rejected(&["gog", "check", "--graph", "/nonexistent/g.json"], &out);
    rejected(&["gog", "check", "--graph", "bundled:nope"], &out);
    rejected(
        &["gog", "reduce", "--graph", "bundled:zz", "--word", "a q"],
        &out,
    );
    rejected(
        &["norm", "seminorm", "--pair", "bundled:uw", "--theta", "-1"],
        &out,
    );
    rejected(
        &["norm", "seminorm", "--pair", "bundled:uw", "--theta", "x"],
        &out,
    );
    rejected(
        &[
            "qm",
            "defect",
            "--graph",
            "bundled:zz",
            "--function",
            "v=cube",
        ],
        &out,
    );
    rejected(&["frobnicate"], &out);
    fs::write(&bad, r#"{"cells": [["p"], ["e"]], "boundaries": [[[0, 0, "1"]]], "class": {"degree": 1, "chain": {"e": "1"}}}"#)
        .unwrap();
    rejected(&["norm", "seminorm", "--pair", bad.to_str().unwrap()], &out);
}

#[test]
fn selftest_quick_and_seeded_fault() {
    let (code, r) = report(&["selftest", "quick"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["result"]["criteria"].as_array().unwrap().len(), 11);
    let (code, r) = report(&["selftest", "quick", "--fault", "barycenter-candidates"]);
    assert_eq!(code, 1);
    let criteria = r["result"]["criteria"].as_array().unwrap();
    assert_eq!(criteria[2]["passed"], false);
}

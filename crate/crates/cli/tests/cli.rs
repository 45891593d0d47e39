//! End-to-end runs of the `ptft` binary on the fixture files.

use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ptft")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

#[test]
fn divisors_of_twelve() {
    let (code, v) = run_json(&["divisors", "12"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({ "n": 12, "d": 6, "oracle": 6, "match": true }));
}

#[test]
fn omega_polynomial_of_twelve() {
    let (code, v) = run_json(&["divisors", "12", "--omega"]);
    assert_eq!(code, 0);
    assert_eq!(v["omega"], json!(["1", "2", "2", "1"]));
    assert_eq!(v["match"], json!(true));
}

#[test]
fn verify_delta_gluing() {
    let (code, v) = run_json(&["verify", "delta", "gluing", "--cases", "100", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({ "theorem": "gluing", "instance": "delta", "cases": 100, "failures": 0 }));
}

#[test]
fn closed_signature_bordism_is_a_delta() {
    let (code, v) = run_json(&["statesum", "signature", &fixture("closed-sigma3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({ "3": "1" }));
}

#[test]
fn interval_state_vector_of_delta() {
    let (code, v) = run_json(&["statesum", "delta", &fixture("interval.json"), "--n-max", "1"]);
    assert_eq!(code, 0);
    assert_eq!(
        v,
        json!([
            { "in": [0], "out": [0], "value": { "id": "1" } },
            { "in": [1], "out": [1], "value": { "id": "1" } }
        ])
    );
}

#[test]
fn state_sum_at_one_boundary_field() {
    let (code, v) = run_json(&["statesum", "iv-lc", &fixture("parallel.json"), "--boundary", &fixture("boundary-pm1.json")]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({ "1": "1" }));
}

#[test]
fn polya_necklaces() {
    let (code, v) = run_json(&["polya", &fixture("c4.json"), "--colors", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["orbit_count"], json!(6));
    assert_eq!(v["state_sum_chi"], json!("24"));
    assert_eq!(v["consistent"], json!(true));
}

#[test]
fn burnside_on_the_square() {
    let (code, v) = run_json(&["polya", &fixture("d4.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["group_order"], json!(8));
    assert_eq!(v["orbit_count"], json!(1));
}

#[test]
fn signature_of_the_hyperbolic_plane() {
    let (code, v) = run_json(&["signature", &fixture("hyperbolic.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["signature"], json!(0));
}

#[test]
fn aggregate_over_a_catalog() {
    let (code, v) = run_json(&["aggregate", "signature", &fixture("catalog.json")]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({ "0": "1", "1": "2" }));
}

#[test]
fn category_checks() {
    let (code, v) = run_json(&["catcheck", &fixture("idempotent-monoid.json")]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = run_json(&["catcheck", &fixture("broken-interchange.json")]);
    assert_eq!(code, 2);
    let failing: Vec<&Value> = v["entries"].as_array().unwrap().iter().filter(|e| e["failures"] != json!(0)).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|e| e.get("counterexample").is_some()));
}

#[test]
fn semiring_laws_pass() {
    let (code, v) = run_json(&["laws", "tropical-min-plus", "--samples", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["subject"], json!("semiring tropical-min-plus"));
}

#[test]
fn scoped_out_theorems_succeed_with_a_recorded_counterexample() {
    let (code, v) = run_json(&["verify", "max-step", "cyl-idempotent", "--cases", "20", "--k", "2"]);
    assert_eq!(code, 0, "scoped-out theorems do not fail");
    assert!(v.get("recorded_counterexample").is_some());
}

#[test]
fn validation_errors_exit_with_one() {
    for args in [
        vec!["divisors", "0"],
        vec!["verify", "nope", "gluing"],
        vec!["verify", "delta", "nope"],
        vec!["frobnicate"],
        vec!["verify", "polya", "top-invariance", "--colors", "0"],
    ] {
        let (code, v) = run_json(&args);
        assert_eq!(code, 1, "{args:?}");
        assert!(v["error"]["message"].is_string(), "{args:?}");
    }
    let asym = fixture("asymmetric.json");
    let (code, v) = run_json(&["signature", &asym]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], json!("NotSymmetric"));
    let (code, _) = run_json(&["statesum", "delta", &fixture("missing.json")]);
    assert_eq!(code, 1);
}

#[test]
fn identical_arguments_give_identical_output() {
    let args = ["verify", "max-lc", "zigzag", "--cases", "30", "--seed", "3", "--k", "2"];
    assert_eq!(run(&args), run(&args));
    let laws = ["laws", "formal-language", "--samples", "50", "--seed", "9"];
    assert_eq!(run(&laws), run(&laws));
}

#[test]
fn table_format_is_aligned_text() {
    let (code, text) = run(&["laws", "boolean", "--samples", "10", "--format", "table"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("semiring boolean\nlaw "));
    assert!(text.lines().any(|l| l.starts_with("partition-law")));
}

#[test]
fn report_can_be_written_to_a_file() {
    let dir = std::env::temp_dir().join(format!("ptft-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let (code, text) = run(&["divisors", "30", "--output", path.to_str().unwrap()]);
    assert_eq!((code, text.as_str()), (0, ""));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["d"], json!(8));
    std::fs::remove_dir_all(&dir).unwrap();
}

use std::process::{Command, Output};

use serde_json::Value;
use webcalc::superalgebra::builtin;

fn webcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_webcalc")).args(args).env_remove("WEBCALC_JOBS").output().expect("spawn webcalc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--output", "-"]);
    let o = webcalc(&full);
    let v: Value = serde_json::from_slice(&o.stdout).expect("json report");
    (o.status.code().unwrap(), v)
}

fn tmpfile(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("webcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn schur_dim_prints_ten() {
    let o = webcalc(&["schur", "dim", "--algebra", "trivial", "--n", "2", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "10");
}

#[test]
fn verify_defining_clifford() {
    let o = webcalc(&["web", "verify", "--algebra", "clifford1", "--bound", "2", "--n", "3", "--relations", "defining"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn malformed_algebra_file_is_input_error() {
    let p = tmpfile("truncated.json", "{\"name\": \"x\", \"idempotents\": [");
    let o = webcalc(&["algebra", "validate", "--algebra", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));

    let p = tmpfile("missing.json", "{\"name\": \"x\", \"basis\": []}");
    let o = webcalc(&["algebra", "validate", "--algebra", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("idempotents"));
}

#[test]
fn invalid_table_fails_validation() {
    let mut v = builtin("clifford1").unwrap().to_json();
    for p in v["products"].as_array_mut().unwrap() {
        if p["l"] == "c" && p["r"] == "c" {
            p["terms"] = serde_json::json!([{ "b": "c", "c": "1" }]);
        }
    }
    let path = tmpfile("odd_square.json", &v.to_string());
    let (code, rep) = report(&["algebra", "validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(rep["passed"], false);
    assert!(!rep["result"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn builtin_roundtrips_through_file() {
    let v = builtin("zigzag").unwrap().to_json();
    let path = tmpfile("zigzag.json", &v.to_string());
    let (code, rep) = report(&["schur", "dim", "--algebra", path.to_str().unwrap(), "--n", "1", "--d", "2"]);
    let (_, direct) = report(&["schur", "dim", "--algebra", "zigzag", "--n", "1", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(rep["result"], direct["result"]);
}

#[test]
fn reports_are_deterministic_outside_header() {
    let args = ["wreath", "check", "--algebra", "clifford1", "--d", "2", "--n", "1"];
    let (c1, mut a) = report(&args);
    let (c2, mut b) = report(&["--jobs", "1", args[0], args[1], args[2], args[3], args[4], args[5], args[6], args[7]]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a["schema_version"], 1);
    a.as_object_mut().unwrap().remove("header");
    b.as_object_mut().unwrap().remove("header");
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn diagram_eval_and_reduce() {
    let p = tmpfile("knot.web", "dom: 1^(2)\nlayers: [split(1;1,1)] [merge(1;1,1)]\n");
    let (code, ev) = report(&["web", "eval", "--diagram", p.to_str().unwrap(), "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(ev["result"]["rows"], 3);
    assert!(ev["result"]["entries"].as_array().unwrap().iter().all(|e| e[0] == e[1] && e[2] == "2"));

    let (code, red) = report(&["web", "reduce", "--diagram", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(red["result"]["coordinates"][0]["coefficient"], "2");
}

#[test]
fn bad_diagram_is_input_error() {
    let p = tmpfile("bad.web", "dom: 1^(2)\nlayers: [split(1;1,2)]\n");
    let o = webcalc(&["web", "eval", "--diagram", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = webcalc(&["web", "verify", "--relations", "no-such-relation"]);
    assert_eq!(o.status.code(), Some(2));
    let o = webcalc(&["howe", "check", "--m", "0", "--n", "1", "--d", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = webcalc(&["schur", "dim", "--n", "x", "--d", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn basis_enum_counts() {
    let o = webcalc(&["basis", "enum", "--algebra", "clifford1", "--src", "1^(2)", "--dst", "1^(2)"]);
    assert_eq!(stdout(&o).trim(), "2");
    let o = webcalc(&["basis", "enum", "--src", "1^(1) 1^(1)", "--dst", "1^(1) 1^(1)"]);
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn howe_and_udot_pass() {
    let (code, rep) = report(&["howe", "check", "--algebra", "trivial", "--m", "1", "--n", "2", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(rep["result"]["dim_commutant_right"], 1);
    let (code, rep) = report(&["udot", "verify", "--algebra", "clifford1", "--n", "2", "--bound", "1"]);
    assert_eq!(code, 0);
    assert_eq!(rep["result"]["all_equal"], true);
    let (code, rep) = report(&["udot", "full", "--algebra", "trivial", "--n", "2", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(rep["result"]["full"], true);
}

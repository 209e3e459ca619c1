use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn hermhull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermhull"))
        .args(args)
        .env_remove("HERMHULL_WORK_BOUND")
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = hermhull(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn coeffs(v: &Value) -> Value {
    v["coeffs"].clone()
}

#[test]
fn factor_f4_n5_alpha() {
    let (code, v) = run_json(&["factor", "--p", "2", "--e", "1", "--n", "5", "--lambda", "g^1"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], "1");
    assert_eq!((v["s"].as_u64(), v["t"].as_u64()), (Some(1), Some(1)));
    // alpha = [0,1], alpha^2 = alpha + 1 = [1,1]
    let got: Vec<Value> = v["factors"].as_array().unwrap().iter().map(|f| coeffs(&f["factor"])).collect();
    assert_eq!(
        got,
        vec![
            json!([[1, 1], [1, 0]]),
            json!([[0, 1], [0, 1], [1, 0]]),
            json!([[0, 1], [1, 0], [1, 0]]),
        ]
    );
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes[0]["s_j"], json!([10]));
    assert_eq!(classes[1]["cosets"], json!([[1, 4], [7, 13]]));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["factor", "--q", "9", "--n", "10", "--lambda", "g^8"];
    let a = hermhull(&args);
    let b = hermhull(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn lambda_syntaxes_agree() {
    // g has order 8, so g^4 = -1 whatever the modulus
    let (_, a) = run_json(&["count", "--p", "3", "--e", "1", "--n", "4", "--lambda", "g^4", "--self-dual"]);
    let (_, b) = run_json(&["count", "--p", "3", "--e", "1", "--n", "4", "--lambda", "-1", "--self-dual"]);
    let (_, c) = run_json(&["count", "--p", "3", "--e", "1", "--n", "4", "--lambda", "[2]", "--self-dual"]);
    assert_eq!(a, b);
    assert_eq!(b, c);
    assert_eq!(a["count"], "4");
}

#[test]
fn counts_are_decimal_strings() {
    let (code, v) = run_json(&["count", "--p", "2", "--e", "1", "--n", "10", "--lambda", "g^1", "--self-dual", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], "3");
    assert_eq!(v["oracle"]["count"], "3");
    assert_eq!(v["oracle"]["agrees"], true);
    let (_, v) = run_json(&["count", "--p", "2", "--e", "1", "--n", "5", "--lambda", "g^1", "--lcd"]);
    assert_eq!(v["count"], "4");
}

#[test]
fn enumerate_respects_limit_and_reports_total() {
    let (code, v) = run_json(&[
        "enumerate", "--p", "3", "--e", "1", "--n", "4", "--lambda", "-1", "--self-dual", "--limit", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], "4");
    assert_eq!(v["emitted"], 3);
    assert_eq!(v["truncated"], true);
}

#[test]
fn hull_spectrum_small() {
    let (_, v) = run_json(&["hull-spectrum", "--p", "2", "--e", "1", "--n", "5", "--lambda", "g^1"]);
    assert_eq!(v["spectrum"], json!([0, 2]));
}

#[test]
fn mds_construct_f9() {
    let (code, v) = run_json(&["mds", "construct", "--p", "3", "--e", "1", "--n", "4", "--lambda", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["parameters"], json!([4, 2, 3]));
    assert_eq!(v["certificate"]["min_distance"], 3);
    assert_eq!(v["certificate"]["codewords_scanned"], 81);
    assert_eq!(v["certificate"]["gram_zero"], true);
}

#[test]
fn mds_exists_witness() {
    let (code, v) = run_json(&["mds", "exists", "--q", "7", "--n", "6", "--r", "2", "--search"]);
    assert_eq!(code, 0);
    assert_eq!(v["witness"], 3);
    assert_eq!(v["search"]["mds_codes"], json!([]));
}

#[test]
fn qt_counts() {
    let (_, v) = run_json(&["qt", "count", "--p", "2", "--e", "1", "--n", "3", "--lambda", "1", "--ell", "2"]);
    assert_eq!(v["result"]["count"], "27");
    let (_, v) = run_json(&["qt", "count", "--p", "3", "--e", "1", "--n", "4", "--lambda", "-1", "--ell", "2"]);
    assert_eq!(v["result"]["count"], "144");
    let (_, v) = run_json(&["qt", "count", "--p", "2", "--e", "1", "--n", "3", "--lambda", "1", "--ell", "3"]);
    assert_eq!(v["result"]["count"], "0");
}

#[test]
fn qt_decompose_then_reconstruct() {
    let base = ["--p", "3", "--e", "1", "--n", "4", "--lambda", "-1"];
    let mut child = Command::new(env!("CARGO_BIN_EXE_hermhull"))
        .args(["qt", "decompose", "--ell", "2"])
        .args(base)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"rows": [[1, 0, 2, 1, 0, 0, 1, 1]]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let dec: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(dec["components"]["euclidean"].as_array().unwrap().len(), 2);
    let dir = std::env::temp_dir().join(format!("hermhull-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dec.json");
    std::fs::write(&path, serde_json::to_vec(&dec).unwrap()).unwrap();
    let mut args = vec!["qt", "reconstruct", "--input", path.to_str().unwrap()];
    args.extend(base);
    let (code, rec) = run_json(&args);
    assert_eq!(code, 0);
    assert_eq!(rec["code"], dec["code"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_counts_passes() {
    let (code, v) = run_json(&["verify", "--suite", "counts", "--max-n", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["failed"], 0);
    assert!(v["work"].as_u64().unwrap() > 0);
}

#[test]
fn exit_codes() {
    let out = hermhull(&["factor", "--p", "2", "--e", "1", "--n", "5", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(hermhull(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hermhull(&["factor", "--p", "4", "--e", "1", "--n", "5", "--lambda", "1"]).status.code(), Some(1));
    assert_eq!(hermhull(&["factor", "--p", "2", "--e", "1", "--n", "5", "--lambda", "0"]).status.code(), Some(1));

    let (code, v) = run_json(&["factor", "--p", "3", "--e", "1", "--n", "4", "--lambda", "g^1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "precondition");
    assert_eq!(v["schema_version"], "1");
    let (code, _) = run_json(&["qt", "count", "--p", "3", "--e", "1", "--n", "6", "--lambda", "1", "--ell", "2"]);
    assert_eq!(code, 2);

    let out = Command::new(env!("CARGO_BIN_EXE_hermhull"))
        .args(["count", "--p", "3", "--e", "1", "--n", "4", "--lambda", "-1", "--self-dual", "--oracle"])
        .env("HERMHULL_WORK_BOUND", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "work-bound");
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("hermhull-out-{}.json", std::process::id()));
    let out = hermhull(&[
        "hull-spectrum", "--p", "2", "--e", "1", "--n", "3", "--lambda", "1", "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "hull-spectrum");
    std::fs::remove_file(&path).ok();
}

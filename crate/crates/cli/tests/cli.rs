use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn semipolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semipolar")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn build_symplectic_and_cross() {
    let out = semipolar(&["build", "--field", "3", "--kind", "symplectic", "--index", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!((v["n"].as_u64(), v["nu"].as_u64(), v["kind"].as_str()), (Some(4), Some(1), Some("symplectic")));

    let v = json(&semipolar(&["build", "--field", "3", "--kind", "cross"]));
    assert_eq!((v["n"].as_u64(), v["nu"].as_u64()), (Some(3), Some(3)));
}

#[test]
fn build_rejects_characteristic_two() {
    let out = semipolar(&["build", "--field", "2", "--kind", "symplectic"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd prime"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(semipolar(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(semipolar(&["verify", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(semipolar(&["export", "--what", "pencil", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(semipolar(&["build", "--kind", "custom"]).status.code(), Some(2));
    assert_eq!(semipolar(&["verify", "--kind", "cross", "--suite", "oracle"]).status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_three() {
    let out = semipolar(&["verify", "--index", "2", "--suite", "gamma", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
    let out = semipolar(&["verify", "--index", "2", "--suite", "oracle"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_gamma_on_m2() {
    let out = semipolar(&["verify", "--field", "3", "--index", "2", "--suite", "gamma"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["suites"][0]["suite"], "gamma");
}

#[test]
fn verify_oracle_reports_group_size() {
    let out = semipolar(&["verify", "--index", "1", "--suite", "oracle"]);
    assert!(out.status.success());
    let notes = &json(&out)["suites"][0]["notes"];
    assert_eq!(notes["group_size"], 1296);
    assert_eq!(notes["predicted"], 1296);
}

#[test]
fn verify_triangles_on_cross_finds_none() {
    let out = semipolar(&["verify", "--kind", "cross", "--suite", "triangles"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["suites"][0]["notes"]["triangles_through_origin"], 0);
}

#[test]
fn all_skips_scalar_suites_for_vector_forms() {
    let path = tmp("nu2.json");
    let text = r#"{"p": 3, "n": 2, "nu": 2, "gram": [[0, 1, 1, 2]], "atlas": [[1, 0], [0, 1]], "kind": "custom"}"#;
    std::fs::write(&path, text).unwrap();
    let out = semipolar(&["verify", "--instance", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    let skipped: Vec<_> = v["skipped"].as_object().unwrap().keys().cloned().collect();
    assert_eq!(skipped, ["bisectors", "metric", "oracle"]);
    assert_eq!(v["suites"].as_array().unwrap().len(), 11);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "--index", "1", "--suite", "metric,recover,joinable", "--sample", "7", "--seed", "11"];
    let a = semipolar(&args);
    let b = semipolar(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 11);
}

#[test]
fn instance_file_round_trip() {
    let path = tmp("m1.json");
    let p = path.to_str().unwrap();
    assert!(semipolar(&["build", "--index", "1", "--out", p]).status.success());
    let out = semipolar(&["verify", "--instance", p, "--suite", "axioms,lines"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["instance"]["kind"], "symplectic");

    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\"p\": 4}").unwrap();
    assert_eq!(semipolar(&["verify", "--instance", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn custom_instance_is_accepted() {
    let path = tmp("custom.json");
    let text = r#"{"p": 5, "n": 2, "nu": 1, "gram": [[0, 1, 2]], "atlas": [[3]], "kind": "custom"}"#;
    std::fs::write(&path, text).unwrap();
    let out = semipolar(&["verify", "--instance", path.to_str().unwrap(), "--suite", "axioms,gamma,joinable"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn export_adjacency_dot_and_csv() {
    let out = semipolar(&["export", "--what", "adjacency", "--format", "dot"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("graph adjacency {"));
    assert_eq!(text.lines().filter(|l| l.contains("[label=")).count(), 27);

    let out = semipolar(&["export", "--what", "adjacency", "--format", "csv", "--kind", "cross"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("v varying slowest"));
    // Each point of the cross instance lies on 13 singular lines, with 2 further points each.
    assert_eq!(text.lines().count() - 2, 729 * 26 / 2);
}

#[test]
fn export_pencil_at_origin() {
    let out = semipolar(&["export", "--what", "pencil", "--index", "2", "--at", "origin"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["points"].as_array().unwrap().len(), 40);
    assert_eq!(v["lines"].as_array().unwrap().len(), 40);
    assert_eq!(v["isomorphic"], true);

    let by_coords = semipolar(&["export", "--what", "pencil", "--at", "0,0,0"]);
    let by_index = semipolar(&["export", "--what", "pencil", "--at", "0"]);
    assert_eq!(by_coords.stdout, by_index.stdout);
    assert_eq!(semipolar(&["export", "--what", "pencil", "--at", "1,2"]).status.code(), Some(2));
}

#[test]
fn export_bisectors_for_one_pair() {
    let out = semipolar(&["export", "--what", "bisectors", "--pair", "0,1"]);
    assert!(out.status.success());
    let v = json(&out);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    let kinds: Vec<_> = reports.iter().map(|r| r["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["t", "m", "sphere"]);
    for r in reports {
        if r["classification"] == "hyperplane" {
            assert_eq!(r["cardinality"], 9);
        }
    }
}

#[test]
fn export_autos_lists_the_family() {
    let out = semipolar(&["export", "--what", "autos"]);
    assert!(out.status.success());
    let v = json(&out);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 1296);
    assert!(list[0].get("phi_matrix").is_some() && list[0].get("alpha").is_some());
}

#[test]
fn export_reconstruct_reports_isomorphism() {
    let out = semipolar(&["export", "--what", "reconstruct", "--field", "3", "--index", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["report"]["isomorphic"], true);
    assert_eq!(v["report"]["classes"], 13);

    let out = semipolar(&["export", "--what", "reconstruct", "--diag", "1,1,-1"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["report"]["isomorphic"], true);
}

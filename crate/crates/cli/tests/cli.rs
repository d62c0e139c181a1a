use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperswitch")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn catalog_wqh2_is_a_four_by_four_matrix() {
    let out = run(&["catalog", "--family", "wqh:2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 4);
    assert!(m.iter().all(|r| r.as_array().unwrap().len() == 4));
    assert_eq!(v["row_sum"], "1");
}

#[test]
fn bad_family_is_a_domain_error() {
    let out = run(&["catalog", "--family", "gm:5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["kind"], "catalog");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["catalog"]).status.code(), Some(2));
}

#[test]
fn fixture_verification() {
    let out = run(&["fixtures", "verify", "fano10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["check"]["certificate"]["valid"], true);
    let all = run(&["fixtures", "verify", "--all"]);
    assert_eq!(all.status.code(), Some(0));
    assert_eq!(json_of(&all).as_array().unwrap().len(), 8);
    let list = json_of(&run(&["fixtures", "list"]));
    assert!(list.as_array().unwrap().iter().all(|f| f["pinned"] == true));
}

#[test]
fn g2_is_irregular_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let g2 = run(&["fixtures", "show", "g2"]);
    let path = write(dir.path(), "g2.json", &String::from_utf8(g2.stdout).unwrap());
    let v = json_of(&run(&["regular", "--input", &path]));
    assert_eq!(v["regular"], false);
    assert_eq!(v["witness"]["x"].as_array().unwrap().len(), 4);
}

#[test]
fn switch_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", "2; a,x; b,x; c,y; d,y; x,y");
    let h = dir.path().join("h.json");
    let cert = dir.path().join("cert.json");
    let out = run(&[
        "switch", "--family", "gm4", "--set", "a,b,c,d", "--input", &g,
        "--output", h.to_str().unwrap(), "--cert", cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let cert_json: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(cert_json["certificate"]["valid"], true);
    let q = write(dir.path(), "q.json", &cert_json["certificate"]["q"].to_string());
    let v = run(&["verify", "--q", &q, "--g", &g, "--h", h.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json_of(&v)["conjugation_equal"], true);
    // G against itself fails the conjugation check
    let bad = run(&["verify", "--q", &q, "--g", &g, "--h", &g]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn bkq_fano_rank_three() {
    let v = json_of(&run(&["bkq", "--family", "fano", "--k", "3"]));
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn echar_single_edge() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "e.txt", "3; 1,2,3");
    let out = run(&["echar", "--input", &g, "--scaled", "--starts", "100", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["polynomial"], serde_json::json!(["1", "0", "-1/3", "0"]));
    assert_eq!(v["roots_numeric"].as_array().unwrap().len(), 3);
    assert_eq!(v, json_of(&run(&["echar", "--input", &g, "--scaled", "--starts", "100", "--seed", "3"])));
}

#[test]
fn prop4_part_four() {
    let v = json_of(&run(&["prop4", "--part", "iv"]));
    assert_eq!(v["matches"], true);
}

#[test]
fn pretty_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m.json");
    let out = run(&["catalog", "--family", "fano", "--pretty", "--output", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(p).unwrap();
    assert!(text.contains("\n  "));
}

//! End-to-end tests of the `dwork` binary: exit codes, report contents, and
//! byte-identical reruns.

use std::process::{Command, Output};

fn dwork(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwork"))
        .args(args)
        .output()
        .expect("failed to run dwork binary")
}

fn json_of(args: &[&str]) -> serde_json::Value {
    let out = dwork(args);
    assert!(
        out.status.success(),
        "dwork {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("invalid JSON output")
}

#[test]
fn hodge_quintic_threefold() {
    let v = json_of(&["hodge", "--n", "4"]);
    assert_eq!(v["results"]["hodge"]["middle"], serde_json::json!([1, 101, 101, 1]));
    assert_eq!(v["results"]["hodge"]["euler"], serde_json::json!(-200));
    assert_eq!(v["results"]["singular_fibers"]["nodes_per_fiber"], serde_json::json!(125));
}

#[test]
fn hodge_sextic_fourfold_row() {
    let v = json_of(&["hodge", "--n", "5"]);
    assert_eq!(
        v["results"]["hodge"]["middle"],
        serde_json::json!([1, 426, 1752, 426, 1])
    );
}

#[test]
fn hodge_general_quartic_surface() {
    let v = json_of(&["hodge", "--dim", "2", "--deg", "4"]);
    assert_eq!(v["results"]["hodge"]["middle"], serde_json::json!([1, 20, 1]));
}

#[test]
fn hodge_usage_error_exit_code() {
    let out = dwork(&["hodge"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dwork(&["hodge", "--dim", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quotient_named_and_literal_group_agree() {
    let named = json_of(&["quotient", "--group", "G2"]);
    let literal = json_of(&["quotient", "--group", "h(1,4,0,0,0),h(1,0,4,0,0)"]);
    assert_eq!(named["results"]["h11"], serde_json::json!(49));
    assert_eq!(named["results"]["h21"], serde_json::json!(5));
    assert_eq!(named["results"]["h11"], literal["results"]["h11"]);
    assert_eq!(named["results"]["h21"], literal["results"]["h21"]);
}

#[test]
fn quotient_d5a() {
    let v = json_of(&["quotient", "--group", "D5a"]);
    assert_eq!(v["results"]["h11"], serde_json::json!(3));
    assert_eq!(v["results"]["h21"], serde_json::json!(19));
}

#[test]
fn quotient_rejects_non_period_preserving_generator() {
    let out = dwork(&["quotient", "--group", "(1 2);0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("(1 2)"), "error should name the generator: {err}");
}

#[test]
fn quotient_reruns_are_byte_identical() {
    let a = dwork(&["quotient", "--group", "Z15", "--lambda-seed", "7"]);
    let b = dwork(&["quotient", "--group", "Z15", "--lambda-seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn element_literal_round_trip() {
    let v = json_of(&["quotient", "--group", "(1 2)(3 4);0,0,1,1,3"]);
    let gens = v["inputs"]["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0], serde_json::json!("(1 2)(3 4);0,0,1,1,3"));
}

#[test]
fn wps_verdicts() {
    let v = json_of(&["wps", "--n", "5"]);
    assert_eq!(v["results"]["wellformed"]["wellformed"], serde_json::json!(true));
    assert_eq!(
        v["results"]["terminality"]["has_crepant_resolution"],
        serde_json::json!(false)
    );
    let v = json_of(&["wps", "--n", "4"]);
    assert_eq!(v["results"]["wellformed"]["wellformed"], serde_json::json!(false));
    assert_eq!(
        v["results"]["terminality"]["has_crepant_resolution"],
        serde_json::json!(true)
    );
}

#[test]
fn lattice_ns_fermat() {
    let v = json_of(&["lattice", "ns-fermat"]);
    assert_eq!(v["results"]["det"], serde_json::json!(-64));
    assert_eq!(v["results"]["rank"], serde_json::json!(20));
    assert_eq!(v["results"]["invariant_factors"], serde_json::json!([8, 8]));
}

#[test]
fn lattice_kummer_test() {
    let v = json_of(&["lattice", "kummer-test"]);
    assert_eq!(v["results"]["halvable"], serde_json::json!(true));
    assert_eq!(v["results"]["is_kummer"], serde_json::json!(true));
}

#[test]
fn lattice_unknown_subcommand_usage_error() {
    let out = dwork(&["lattice", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn markdown_format() {
    let out = dwork(&["hodge", "--n", "4", "--format", "md"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("## hodge"));
    assert!(text.contains("| result | value |"));
}

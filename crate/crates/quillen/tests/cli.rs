//! CLI contract: exit codes, JSON interchange, env-var overrides, and the
//! byte-exactness of the polynomial format.

use std::path::PathBuf;
use std::process::{Command, Output};

use quillen::polyalg::{parse_poly_json, poly_to_json};

fn data(file: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(file)
        .to_str()
        .unwrap()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quillen"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn exit_0_on_success() {
    let out = run(&["certify", "--input", &data("p_eps_1.json"), "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).expect("stdout is JSON");
    assert_eq!(doc["certificate"]["m"], 3);
    assert_eq!(doc["certificate"]["exact_psd"], true);
}

#[test]
fn exit_1_on_missing_file_and_bad_input() {
    let out = run(&["certify", "--input", "/nonexistent.json", "--m", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 1, "d": 2, "terms": [{"alpha": [1, 1], "beta": [1, 1], "re": "1", "im": "1"}]}"#).unwrap();
    let out = run(&["certify", "--input", bad.to_str().unwrap(), "--m", "1"]);
    assert_eq!(out.status.code(), Some(1), "non-real diagonal term must be rejected");

    let out = run(&["certify", "--input", &data("p_eps_1.json"), "--m", "1", "--tol", "2.0"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["asymptotics", "--input", &data("r_n1.json"), "--m-list", "1,4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_2_when_not_positive_definite() {
    let out = run(&["certify", "--input", &data("p_eps_1.json"), "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(doc["detail"]["min_eigenvalue"].is_number());
}

#[test]
fn exit_3_when_search_exhausts() {
    let out = run(&["search", "--input", &data("p_dangelo.json"), "--m-max", "4"]);
    assert_eq!(out.status.code(), Some(3));
    // The report is still emitted with its full trace.
    let doc: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(doc["report"]["minimal_m"].is_null());
    assert_eq!(doc["report"]["trace"].as_array().unwrap().len(), 5);
}

#[test]
fn exit_4_on_lemma_gate_failure() {
    let out = run(&["lemmas", "--samples", "4000", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(4));
    let doc: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(doc["passed"], false);
}

#[test]
fn env_vars_mirror_flags() {
    let flag = run(&["search", "--input", &data("p_eps_1.json"), "--m-max", "2", "--seed", "5"]);
    let env = Command::new(env!("CARGO_BIN_EXE_quillen"))
        .args(["search", "--input", &data("p_eps_1.json")])
        .env("QUILLEN_M_MAX", "2")
        .env("QUILLEN_SEED", "5")
        .output()
        .expect("binary runs");
    assert_eq!(flag.status.code(), env.status.code());
    assert_eq!(flag.stdout, env.stdout);
}

#[test]
fn out_flag_duplicates_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "search",
        "--input",
        &data("p_eps_2.json"),
        "--m-max",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let file = std::fs::read(&path).unwrap();
    assert_eq!(file, out.stdout);
}

#[test]
fn table_format_renders_rows() {
    let out = run(&[
        "asymptotics",
        "--input",
        &data("r_n1.json"),
        "--m-list",
        "4,8",
        "--samples",
        "2000",
        "--format",
        "table",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("ratio"));
    assert_eq!(text.lines().count(), 3, "header plus one row per power");
}

#[test]
fn empty_m_list_is_an_empty_success() {
    let out = run(&["asymptotics", "--input", &data("r_n1.json"), "--m-list", ""]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(doc["reports"].as_array().unwrap().len(), 0);
}

#[test]
fn polynomial_json_round_trips_coefficient_exact() {
    for file in [
        "p_eps_1.json",
        "p_eps_2.json",
        "p_eps_quarter.json",
        "p_dangelo.json",
        "p_neg.json",
        "unit_n1.json",
        "r_n1.json",
        "r_n2.json",
    ] {
        let text = std::fs::read_to_string(data(file)).unwrap();
        let p = parse_poly_json(&text).expect("data file parses");
        let reserialized = poly_to_json(&p);
        let q = parse_poly_json(&reserialized).expect("round trip parses");
        assert_eq!(p, q, "{file}: coefficients drifted through a round trip");
        // The canonical serialization itself is a fixed point.
        assert_eq!(reserialized.trim(), text.trim(), "{file}");
    }
}

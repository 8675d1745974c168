use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(format!("{name}.json"))
}

fn assignalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_assignalg")).args(args).output().expect("binary runs")
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--output", "machine"];
    full.extend_from_slice(args);
    let out = assignalg(&full);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().unwrap(), doc)
}

fn path(name: &str) -> String {
    corpus(name).to_string_lossy().into_owned()
}

fn scratch(text: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), text).unwrap();
    f
}

#[test]
fn basis_of_the_product_of_lines() {
    let (code, doc) = machine(&["basis", "--degree-bound", "3", &path("cp1_cubed_gkm")]);
    assert_eq!(code, 0);
    assert_eq!(doc["schema"], "assignalg.report/v1");
    assert_eq!(doc["command"], "basis");
    assert_eq!(doc["result"]["generator_degrees"], serde_json::json!([0, 1, 1, 1, 1, 2, 2, 2]));
    assert_eq!(doc["result"]["freeness"], "undetermined_at_bound");
    let (_, doc) = machine(&["basis", "--degree-bound", "4", &path("cp1_cubed_gkm")]);
    assert_eq!(doc["result"]["freeness"], "free");
}

#[test]
fn report_runs_at_the_default_bound() {
    let (code, doc) = machine(&["report", &path("cp1_cubed_gkm")]);
    assert_eq!(code, 0);
    assert_eq!(doc["input"]["degree_bound"], 8);
    assert_eq!(doc["result"]["rank"], 8);
}

#[test]
fn negative_verdicts_exit_one() {
    let (code, doc) = machine(&["report", &path("suspension_gkm")]);
    assert_eq!(code, 1);
    assert_eq!(doc["verdict"], false);
    assert_eq!(doc["result"]["freeness"], "not_free");
    let (code, doc) = machine(&["extend", &path("sphere_in_cp3_extension")]);
    assert_eq!(code, 1);
    assert_eq!(doc["verdict"], false);
}

#[test]
fn oracle_compare_pairs() {
    let (code, doc) = machine(&["oracle-compare", "--degree-bound", "5", &path("n_fixed_points_gkm"), &path("n_fixed_points_strata")]);
    assert_eq!(code, 0);
    let strata: Vec<u64> = doc["result"]["table"].as_array().unwrap().iter().map(|r| r["strata"].as_u64().unwrap()).collect();
    assert_eq!(strata, vec![1, 3, 3, 3, 3, 3]);
    let (code, doc) = machine(&["oracle-compare", &path("trivial_action_gkm"), &path("empty_strata")]);
    assert_eq!(code, 1);
    assert_eq!(doc["result"]["table"][0]["equal"], false);
    let (code, doc) = machine(&["oracle-compare", &path("two_fixed_points_gkm"), &path("s3_strata")]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "torus_dim");
}

#[test]
fn validate_names_the_violated_invariant() {
    let bad = scratch(
        r#"{"kind":"gkm","torus_dim":2,"components":[{"name":"a"},{"name":"b"}],
            "pieces":[{"g":{"span":[]},"members":["a","b"]}]}"#,
    );
    let out = assignalg(&["validate", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("piece_codim"));
    let (code, doc) = machine(&["validate", bad.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "piece_codim");
    assert_eq!(machine(&["validate", &path("cp1_cubed_strata")]).0, 0);
}

#[test]
fn syntax_errors_report_a_position() {
    let bad = scratch("{\n  \"kind\": \"gkm\",\n  oops\n}");
    let out = assignalg(&["validate", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(assignalg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(assignalg(&["basis"]).status.code(), Some(2));
    assert_eq!(assignalg(&["--output", "yaml", "examples"]).status.code(), Some(2));
    assert_eq!(assignalg(&["basis", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(assignalg(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["report", "--degree-bound", "4"],
        vec!["kirwan", "--degree-bound", "3"],
    ] {
        let mut a = args.clone();
        a.push(corpus("cp1_cubed_gkm").to_str().unwrap().to_string().leak());
        let first = assignalg(&a);
        let second = assignalg(&a);
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.status.code(), second.status.code());
    }
    let s = path("s3_strata");
    let a = assignalg(&["--seed", "9", "quotient-circle", "--circle", "1,1", &s]);
    let b = assignalg(&["--seed", "9", "quotient-circle", "--circle", "1,1", &s]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn thread_cap_does_not_change_results() {
    let args = ["--output", "machine", "report", "--degree-bound", "4"];
    let file = path("cp1_cubed_gkm");
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_assignalg"))
            .args(args)
            .arg(&file)
            .env("ASSIGNALG_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, run("4").stdout);
}

#[test]
fn kirwan_flags() {
    let file = path("cp1_cubed_gkm");
    let out = assignalg(&["kirwan", "--circle", "1,1", "--report-format", "machine", "--degree-bound", "4", &file]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verdict"], true);
    assert_eq!(doc["input"]["circle"], serde_json::json!(["1", "1"]));
    let text = assignalg(&["kirwan", "--report-format", "text", "--degree-bound", "4", &file]);
    assert!(String::from_utf8_lossy(&text.stdout).starts_with("kirwan"));
    let bad = assignalg(&["kirwan", "--circle", "1", &file]);
    assert_eq!(bad.status.code(), Some(2));
    let critical = assignalg(&["kirwan", "--circle", "0,0", &file]);
    assert_eq!(critical.status.code(), Some(2));
}

#[test]
fn quotient_circle_of_the_three_sphere() {
    let (code, doc) = machine(&["quotient-circle", "--circle", "1,1", "--degree-bound", "5", &path("s3_strata")]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["dims"], doc["result"]["quotient_dims"]);
    let (code, _) = machine(&["quotient-circle", "--circle", "1,0", &path("s3_strata")]);
    assert_eq!(code, 2);
}

#[test]
fn examples_pass() {
    let (code, doc) = machine(&["--seed", "3", "examples"]);
    assert_eq!(code, 0);
    let claims = doc["result"]["claims"].as_array().unwrap();
    assert!(claims.len() >= 20);
    assert!(claims.iter().all(|c| c["passed"] == true));
}

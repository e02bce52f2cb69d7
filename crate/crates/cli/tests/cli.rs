use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use salmon_core::algebra::textfmt::PolynomialFile;

fn salmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salmon"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = salmon(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_output_round_trips_byte_for_byte() {
    let text = stdout(&["gen", "--module", "M6", "--dims", "3,3,4"]);
    let file = PolynomialFile::parse(&text).unwrap();
    assert_eq!(file.module, "M6");
    assert_eq!(file.degree, 6);
    assert_eq!(file.polys.len(), 10);
    assert_eq!(file.to_text(), text);
}

#[test]
fn gen_writes_to_a_file_and_notes_empty_modules() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m5.txt");
    stdout(&["gen", "--module", "M5", "--dims", "3,3,4", "--out", path(&out)]);
    let file = PolynomialFile::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(file.polys.is_empty());
    assert!(file.notes.iter().any(|n| n.contains("is zero at 3,3,4")));
}

#[test]
fn strassen_is_one_polynomial() {
    let file = PolynomialFile::parse(&stdout(&["gen", "--module", "strassen", "--dims", "3,3,3"])).unwrap();
    assert_eq!(file.polys.len(), 1);
    assert_eq!(file.polys[0].poly.len(), 9216);
}

#[test]
fn exit_codes() {
    assert_eq!(salmon(&["gen", "--module", "M7", "--dims", "3,3,4"]).status.code(), Some(2));
    assert_eq!(salmon(&["test"]).status.code(), Some(2));
    assert_eq!(salmon(&["gen", "--module", "strassen", "--dims", "3,3,4"]).status.code(), Some(3));
    assert_eq!(salmon(&["gen", "--module", "M9", "--dims", "4,4,4"]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"dims\": [3,3").unwrap();
    assert_eq!(salmon(&["test", "--input", path(&bad)]).status.code(), Some(3));
    let missing = dir.path().join("missing.json");
    assert_eq!(salmon(&["test", "--input", path(&missing)]).status.code(), Some(3));
}

#[test]
fn thin_tensors_are_refused() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    stdout(&["sample", "--secant", "2", "--dims", "2,3,4", "--out", path(&t)]);
    let out = salmon(&["test", "--input", path(&t)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains(">= 3"));
}

#[test]
fn sample_then_test() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    stdout(&["--seed", "9", "sample", "--secant", "4", "--dims", "4,4,4", "--out", path(&t)]);
    let sample: Value = serde_json::from_str(&fs::read_to_string(&t).unwrap()).unwrap();
    assert_eq!(sample["meta"]["kind"], "secant");
    assert_eq!(sample["meta"]["seed"], 9);

    let args = ["--seed", "3", "test", "--input", path(&t), "--trials", "4"];
    let report = stdout(&args);
    let v: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["conclusion"], "in-zero-set");
    assert_eq!(v["seed"], 3);
    assert_eq!(v["trials"], 4);
    assert_eq!(stdout(&args), report);

    let sub = dir.path().join("sub.json");
    stdout(&["sample", "--subspace", "3,3,3", "--dims", "3,3,4", "--out", path(&sub)]);
    // a generic 3 x 3 x 3 core has border rank 5: M6 cannot see it, Strassen can
    let v = json(&["test", "--input", path(&sub), "--trials", "4"]);
    assert_eq!(v["families"]["M6"]["verdict"], "vanishes (probabilistic)");
    assert_eq!(v["families"]["M9"]["verdict"], "does-not-vanish");
    assert_eq!(v["conclusion"], "not-in-zero-set");
}

#[test]
fn friedland_report() {
    let v = json(&["test", "--friedland", "--trials", "5"]);
    assert_eq!(v["conclusion"], "not-in-zero-set");
    assert_eq!(v["families"]["M6"]["verdict"], "does-not-vanish");
    assert_eq!(v["families"]["M6"]["certain"], true);
    assert_eq!(v["families"]["M9"]["verdict"], "vanishes (probabilistic)");
    let n = json(&["--mode", "numeric", "test", "--friedland", "--trials", "5"]);
    assert_eq!(n["conclusion"], "not-in-zero-set");
    assert_eq!(n["mode"], "numeric");
}

#[test]
fn dimension_queries() {
    assert_eq!(stdout(&["dims", "--schur", "3,1,1,1", "--n", "4"]), "10\n");
    assert_eq!(stdout(&["dims", "--schur", "2,2,2", "--n", "3"]), "1\n");
    assert_eq!(stdout(&["dims", "--terracini", "4", "--dims", "3,3,4"]), "31\n");
    assert_eq!(stdout(&["dims", "--subspace", "3,3,3", "--dims", "3,3,4"]), "29\n");
    assert_eq!(stdout(&["dims", "--module", "M5", "--dims", "4,4,4"]), "1728\n");
    assert_eq!(stdout(&["dims", "--module", "M6", "--dims", "4,4,4"]), "1000\n");
    assert_eq!(stdout(&["dims", "--module", "M9", "--dims", "4,4,4"]), "8000\n");
    let iso = json(&["dims", "--isotypic", "2", "--dims", "3,3,4"]);
    assert_eq!(iso.as_array().unwrap().len(), 4);
    assert_eq!(salmon(&["dims", "--terracini", "4"]).status.code(), Some(2));
}

#[test]
fn scan_reports_components() {
    let v = json(&["scan", "--degree", "2", "--dims", "3,3,4", "--samples", "20", "--secant-rank", "1"]);
    assert_eq!(v["dims"], serde_json::json!([3, 3, 4]));
    let vanishing: Vec<&Value> = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["verdict"] == "vanishing")
        .collect();
    assert_eq!(vanishing.len(), 3);
    assert_eq!(salmon(&["scan", "--degree", "7", "--dims", "3,3,4"]).status.code(), Some(3));
}

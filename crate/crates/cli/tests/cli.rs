use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pnasync"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn emit(dir: &Path, id: &str) -> PathBuf {
    let o = run(&["corpus", "emit", id]);
    assert!(o.status.success());
    let path = dir.join(format!("{id}.pn"));
    std::fs::write(&path, &o.stdout).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fig2_against_its_full_implementation() {
    let dir = TempDir::new().unwrap();
    let fig2 = emit(dir.path(), "fig2");
    let fi = dir.path().join("fi.pn");
    assert!(run(&["transform", s(&fig2), "--mode", "full", "-o", s(&fi)]).status.success());
    let o = run(&["--json", "equiv", s(&fig2), s(&fi)]);
    assert_eq!(o.status.code(), Some(1));
    let report = json(&o);
    assert_eq!(report["equivalent"], false);
    let witness = report["distinction"]["witness"]["text"].as_str().unwrap();
    assert!(["-/{a}", "-/{b}"].contains(&witness), "{witness}");
    assert_eq!(report["distinction"]["side"], "second");

    let o = run(&["equiv", s(&fig2), s(&fig2)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "equivalent");
}

#[test]
fn classify_json_is_stable() {
    let dir = TempDir::new().unwrap();
    let net = emit(dir.path(), "fig8r");
    let a = run(&["--json", "classify", s(&net), "--route", "both"]);
    let b = run(&["--json", "classify", s(&net), "--route", "both"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let report = json(&a);
    assert_eq!(report["net"], "fig8r");
    assert_eq!(report["timings"], Value::Null);
    let aa = report["verdicts"].as_array().unwrap().iter().find(|v| v["class"] == "AA(B)").unwrap();
    assert_eq!(aa["verdict"], "in");
    let priority = aa["evidence"].as_array().unwrap().iter().find(|e| e["kind"] == "priority").unwrap();
    assert_eq!(priority["orders"]["u"], serde_json::json!(["s", "q", "r"]));
}

#[test]
fn classify_reports_timings_on_request() {
    let dir = TempDir::new().unwrap();
    let net = emit(dir.path(), "fig3");
    let report = json(&run(&["--json", "classify", s(&net), "--timings"]));
    assert!(report["timings"]["total_ms"].is_number());
}

#[test]
fn errors_are_json_with_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.pn");
    std::fs::write(&bad, "net n\ntrans a\ntrans b\narc a b\n").unwrap();
    let o = run(&["reach", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let stderr = String::from_utf8(o.stderr).unwrap();
    let line = stderr.lines().last().unwrap();
    let err: Value = serde_json::from_str(line).unwrap();
    assert_eq!(err["error"]["kind"], "syntax");

    let fig2 = emit(dir.path(), "fig2");
    let fi = dir.path().join("fi.pn");
    run(&["transform", s(&fig2), "--mode", "full", "-o", s(&fi)]);
    let o = run(&["--json", "classify", s(&fi)]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "not-plain");

    let o = run(&["--json", "reach", s(&fi), "--cap", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "cap-exceeded");

    assert_eq!(run(&["corpus", "emit", "fig99"]).status.code(), Some(2));
    assert_eq!(run(&["transform", s(&fig2), "--mode", "full", "--priority", "a:p1"]).status.code(), Some(2));
    assert_eq!(run(&["classify"]).status.code(), Some(2));
}

#[test]
fn validate_reports_diagnostics() {
    let dir = TempDir::new().unwrap();
    let fig2 = emit(dir.path(), "fig2");
    assert_eq!(run(&["validate", s(&fig2), "--plain"]).status.code(), Some(0));

    let fi = dir.path().join("fi.pn");
    run(&["transform", s(&fig2), "--mode", "full", "-o", s(&fi)]);
    assert_eq!(run(&["validate", s(&fi)]).status.code(), Some(0));
    let o = run(&["--json", "validate", s(&fi), "--plain"]);
    assert_eq!(o.status.code(), Some(1));
    let report = json(&o);
    assert_eq!(report["valid"], false);
    assert_eq!(report["diagnostics"][0]["code"], "silent-transition");

    let empty = dir.path().join("empty.pn");
    std::fs::write(&empty, "net e\nplace p\ntrans t\n").unwrap();
    let o = run(&["validate", s(&empty)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("empty-preset"));
}

#[test]
fn asymmetric_transform_with_priority() {
    let dir = TempDir::new().unwrap();
    let fig3 = emit(dir.path(), "fig3");
    let report = json(&run(&["--json", "transform", s(&fig3), "--mode", "asymm", "--priority", "b:p2,p1"]));
    assert_eq!(report["net"], "fig3_ai");
    assert_eq!(report["priority"]["compact"], "b:p2,p1");
    let text = report["text"].as_str().unwrap();
    assert!(text.contains("place b.p1.b\n") && !text.contains("b.p2.b"));

    let o = run(&["transform", s(&fig3), "--mode", "asymm", "--priority", "b:p1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failures_listing() {
    let dir = TempDir::new().unwrap();
    let fig2 = emit(dir.path(), "fig2");
    let o = run(&["failures", s(&fig2), "--maxlen", "1"]);
    assert_eq!(stdout(&o), "-/{}\na/{a,b}\nb/{a,b}\n");
    let report = json(&run(&["--json", "failures", s(&fig2), "--maxlen", "0"]));
    assert_eq!(report["failures"].as_array().unwrap().len(), 1);
}

#[test]
fn reach_lists_markings() {
    let dir = TempDir::new().unwrap();
    let msc = emit(dir.path(), "msc");
    let report = json(&run(&["--json", "reach", s(&msc)]));
    assert_eq!(report["contact_free"], true);
    assert_eq!(report["deterministic"], true);
    let markings = report["markings"].as_array().unwrap();
    let initial = report["initial"].as_u64().unwrap() as usize;
    assert_eq!(markings[initial], serde_json::json!(["p1", "p2"]));
}

#[test]
fn check_theorems_small_runs() {
    let o = run(&["check-theorems", "--max-places", "2", "--max-trans", "2", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("0 violations"));

    let a = run(&["--json", "check-theorems", "--seed", "5", "--samples", "100"]);
    let b = run(&["--json", "check-theorems", "--seed", "5", "--samples", "100", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let report = json(&a);
    assert_eq!(report["nets"], 100);
    assert_eq!(report["violations"], serde_json::json!([]));
}

#[test]
fn corpus_listing() {
    let o = run(&["corpus", "list"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("NET_FIG9") && l.contains("AA(B)=in")));
    let items = json(&run(&["--json", "corpus", "list"]));
    assert_eq!(items.as_array().unwrap().len(), 12);
}

//! End-to-end runs of the `sigma-artin` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use sigma_artin::report::Report;
use sigma_artin::sigma::Answer;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigma-artin")).args(args).output().expect("spawn sigma-artin")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("sigma-artin-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("write temp file");
    path
}

const I24: &str = r#"{"vertices": ["v", "w"], "edges": [{"u": "v", "v": "w", "label": 4}], "character": {"v": 1, "w": -1}}"#;

fn answers(r: &Report) -> Vec<Answer> {
    r.verdicts.iter().map(|v| v.answer).collect()
}

#[test]
fn catalog_json_round_trips() {
    let out = run(&["catalog", "B", "3", "--char", "2,-1", "--n-max", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let report = Report::from_json(&text).expect("report json");
    assert_eq!(answers(&report), vec![Answer::In, Answer::Out]);
    assert_eq!(report.class_values, vec![2, -1]);
    assert_eq!(Report::from_json(&report.to_json().unwrap()).unwrap(), report);
}

#[test]
fn catalog_accepts_vertex_values() {
    let out = run(&["catalog", "I2", "6", "--char", "1,-1,", "--format", "json"]);
    assert_eq!(code(&out), 2);
    let out = run(&["catalog", "A~", "2", "--char", "1,1,1", "--n-max", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert_eq!(answers(&report), vec![Answer::In, Answer::Out]);
}

#[test]
fn check_reads_graph_and_inline_character() {
    let path = temp_file("i24.json", I24);
    let p = path.to_str().unwrap();
    let out = run(&["check", "--graph", p, "--n-max", "2", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(answers(&Report::from_json(&stdout(&out)).unwrap()), vec![Answer::Out, Answer::Out]);

    let out = run(&["check", "--graph", p, "--char", "v=1,w=1", "--n-max", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(answers(&Report::from_json(&stdout(&out)).unwrap()), vec![Answer::In, Answer::In]);

    let out = run(&["check", "--graph", p, "--char", "2,1/2", "--fields", "0,2", "--ring", "Q"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("ring Q"));
    assert!(text.contains("Σ^1(A_Γ, Z): IN"));
    std::fs::remove_file(path).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["check"])), 1);
    assert_eq!(code(&run(&["catalog", "B", "3", "--char", "1,1", "--format", "yaml"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["catalog", "Q", "3", "--char", "1"])), 2);
    assert_eq!(code(&run(&["catalog", "B~", "2", "--char", "1,1"])), 2);
    assert_eq!(code(&run(&["catalog", "B", "3", "--char", "0,0"])), 2);
    assert_eq!(code(&run(&["check", "--graph", "/nonexistent/graph.json", "--char", "1"])), 2);

    let bad_label = temp_file("bad.json", r#"{"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "label": 1}]}"#);
    assert_eq!(code(&run(&["check", "--graph", bad_label.to_str().unwrap(), "--char", "1,1"])), 2);
    std::fs::remove_file(bad_label).ok();

    let odd = temp_file("odd.json", r#"{"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "label": 3}]}"#);
    assert_eq!(code(&run(&["check", "--graph", odd.to_str().unwrap(), "--char", "1,2"])), 2);
    std::fs::remove_file(odd).ok();
}

#[test]
fn regress_reports_summary() {
    let out = run(&["regress", "--bound", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("cases agree with the closed forms"));
}

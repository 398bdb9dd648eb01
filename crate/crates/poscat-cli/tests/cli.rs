//! End-to-end tests of the command-line surface and its exit-code contract:
//! 0 pass, 1 semantic failure with witness, 2 input/parse error.

use std::process::{Command, Output};

fn poscat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poscat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn poscat_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poscat"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn validate_builtins() {
    assert_eq!(code(&poscat(&["validate", "builtin:ONE"])), 0);
    assert_eq!(code(&poscat(&["validate", "builtin:IDEM"])), 0);
    assert_eq!(code(&poscat(&["validate", "builtin:ARROW"])), 0);
}

#[test]
fn validate_law_violation_exits_1_with_witness() {
    // e ∘ e is required but not given
    let dir = std::env::temp_dir().join("poscat_cli_missing");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"objects":["x"],"morphisms":[{"id":"e","dom":"x","cod":"x"}]}"#,
    )
    .unwrap();
    let out = poscat(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("missing composite"));
}

#[test]
fn parse_errors_exit_2() {
    let out = poscat(&["validate", "builtin:NOPE"]);
    assert_eq!(code(&out), 2);
    let dir = std::env::temp_dir().join("poscat_cli_garbage");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("garbage.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(code(&poscat(&["validate", path.to_str().unwrap()])), 2);
    let unknown = dir.join("unknown_key.json");
    std::fs::write(&unknown, r#"{"objects":[],"morphisms":[],"extra":1}"#).unwrap();
    assert_eq!(code(&poscat(&["validate", unknown.to_str().unwrap()])), 2);
}

#[test]
fn check_verdicts() {
    assert_eq!(code(&poscat(&["check", "builtin:ARROW", "--exact"])), 0);
    assert_eq!(code(&poscat(&["check", "builtin:ONE", "--regular"])), 0);
    let out = poscat(&["check", "builtin:IDEM", "--weakly-lex"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("BinaryProduct"));
    assert_eq!(code(&poscat(&["check", "builtin:ARROW", "--projectives"])), 0);
}

#[test]
fn complete_writes_parseable_output() {
    let dir = std::env::temp_dir().join("poscat_cli_complete");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("one_ex.json");
    let out = poscat(&[
        "complete",
        "builtin:ONE",
        "-o",
        out_path.to_str().unwrap(),
        "--crosscheck",
    ]);
    assert_eq!(code(&out), 0);
    let written = std::fs::read_to_string(&out_path).unwrap();
    let completed = poscat::json::parse_category(&written).unwrap();
    assert!(completed.isomorphic_to(&poscat::fixture_one()));
    // the written file revalidates through the CLI
    assert_eq!(code(&poscat(&["validate", out_path.to_str().unwrap()])), 0);
}

#[test]
fn complete_with_provenance_keeps_category_parseable() {
    let dir = std::env::temp_dir().join("poscat_cli_prov");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("arrow_ex.json");
    let out = poscat(&[
        "complete",
        "builtin:ARROW",
        "-o",
        out_path.to_str().unwrap(),
        "--provenance",
    ]);
    assert_eq!(code(&out), 0);
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(written.contains("\"provenance\""));
    let completed = poscat::json::parse_category(&written).unwrap();
    assert!(completed.isomorphic_to(&poscat::fixture_arrow()));
}

#[test]
fn complete_rejects_non_weakly_lex() {
    let dir = std::env::temp_dir().join("poscat_cli_rej");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("idem_ex.json");
    let out = poscat(&["complete", "builtin:IDEM", "-o", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not weakly lex"));
}

#[test]
fn size_guard_env_is_honored() {
    let dir = std::env::temp_dir().join("poscat_cli_guard");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("guarded.json");
    let out = poscat_env(
        &["complete", "builtin:ARROW", "-o", out_path.to_str().unwrap()],
        "POSCAT_SIZE_GUARD",
        "1,8192",
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("size guard exceeded"));
}

#[test]
fn extend_gamma_over_arrow_reports_equivalence() {
    let dir = std::env::temp_dir().join("poscat_cli_extend");
    std::fs::create_dir_all(&dir).unwrap();
    let comp_path = dir.join("arrow_ex.json");
    assert_eq!(
        code(&poscat(&["complete", "builtin:ARROW", "-o", comp_path.to_str().unwrap()])),
        0
    );
    let out = poscat(&[
        "extend",
        "--gamma",
        "builtin:ARROW",
        "--completion",
        comp_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("[pass] extension equivalence"));
    assert!(text.contains("[pass] stored completion matches"));
}

#[test]
fn extend_functor_file() {
    let dir = std::env::temp_dir().join("poscat_cli_functor");
    std::fs::create_dir_all(&dir).unwrap();
    let f_path = dir.join("id_arrow.json");
    std::fs::write(
        &f_path,
        r#"{"source":"builtin:ARROW","target":"builtin:ARROW",
           "objMap":{"a":"a","b":"b"},
           "morMap":{"id_a":"id_a","id_b":"id_b","f":"f"}}"#,
    )
    .unwrap();
    let out = poscat(&["extend", "--functor", f_path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "pass");
}

#[test]
fn corpus_battery_passes_at_micro_scale() {
    let out = poscat(&["corpus", "--objects", "1", "--morphisms", "2", "--assert-theorems"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("5 categories"));
    let too_big = poscat(&["corpus", "--objects", "4", "--morphisms", "4"]);
    assert_eq!(code(&too_big), 2);
}

#[test]
fn dot_renders_arrow() {
    let out = poscat(&["dot", "builtin:ARROW", "--show-ids"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches("label=\"id_").count(), 2);
    assert!(text.contains("\"a\" -> \"b\" [label=\"f\"]"));
    // without --show-ids only the non-identity edge remains
    let bare = stdout(&poscat(&["dot", "builtin:ARROW"]));
    assert_eq!(bare.matches("->").count(), 1);
}

#[test]
fn json_format_report_is_machine_readable() {
    let out = poscat(&["validate", "builtin:ONE", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "pass");
    assert!(report["checks"].as_array().unwrap().len() == 1);
}

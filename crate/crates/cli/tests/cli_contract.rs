//! Black-box checks of the command-line contract: documented example
//! invocations, exit codes, and the JSON envelope.

use std::process::{Command, Output};

fn arglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arglab")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn consequence_example_prints_true() {
    let out = arglab(&["consequence", "fx_cp_a", "--rel", "a", "--add", "alpha", "--query", "beta"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "true");
}

#[test]
fn axiom_example_reports_the_failure() {
    let out = arglab(&[
        "axiom", "fx_t_j", "--axiom", "T", "--rel", "j", "--alpha", "a", "--beta", "b",
        "--gamma", "r",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("status: fails"), "got:\n{}", stdout(&out));
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = arglab(&["parse", "nonexistent.at"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = arglab(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_cleanly() {
    let out = arglab(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn parse_error_reports_position_and_exits_nonzero() {
    let dir = std::env::temp_dir().join("arglab-contract");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.at");
    std::fs::write(&path, "axiom a\npremise b.\n").unwrap();
    let out = arglab(&["parse", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("broken.at:2:1"), "got:\n{err}");
}

#[test]
fn every_json_payload_carries_its_schema() {
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["parse", "fx_m_j"], "arglab.parse/1"),
        (vec!["args", "fx_m_j"], "arglab.args/1"),
        (vec!["attacks", "fx_m_j"], "arglab.attacks/1"),
        (vec!["extensions", "fx_m_j", "--semantics", "preferred"], "arglab.extensions/1"),
        (vec!["justified", "fx_m_j", "--mode", "grounded"], "arglab.justified/1"),
        (
            vec!["consequence", "fx_m_j", "--rel", "j", "--add", "b", "--query", "g"],
            "arglab.consequence/1",
        ),
        (
            vec!["axiom", "fx_m_j", "--axiom", "M", "--interp", "strict", "--rel", "j",
                 "--alpha", "a", "--beta", "b", "--gamma", "g"],
            "arglab.axiom/1",
        ),
        (
            vec!["search", "--axiom", "CP", "--rel", "a", "--limit", "50"],
            "arglab.search/1",
        ),
        (vec!["postulates", "fx_m_j", "--semantics", "grounded"], "arglab.postulates/1"),
        (
            vec!["table2", "--limit", "20", "--max-atoms", "3", "--max-rules", "3"],
            "arglab.table2/1",
        ),
    ];
    for (args, schema) in cases {
        let mut full = vec!["--json"];
        full.extend(&args);
        let out = arglab(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?} failed:\n{}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value =
            serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(v["schema"], serde_json::json!(schema), "{args:?}");
    }
}

#[test]
fn postulate_violation_exits_with_code_two() {
    let dir = std::env::temp_dir().join("arglab-contract");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("unclosed.at");
    std::fs::write(&path, "premise a.\npremise b.\nstrict a -> c.\nstrict b -> ~c.\n").unwrap();
    let out = arglab(&["postulates", path.to_str().unwrap(), "--semantics", "grounded"]);
    assert_eq!(out.status.code(), Some(2));
    let closed = arglab(&[
        "postulates", path.to_str().unwrap(), "--semantics", "grounded", "--close-transposition",
    ]);
    assert_eq!(closed.status.code(), Some(0));
}

#[test]
fn fixture_name_resolution_prefers_files_on_disk() {
    let dir = std::env::temp_dir().join("arglab-contract");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fx_ref_j");
    std::fs::write(&path, "axiom z.\n").unwrap();
    let cwd_out = Command::new(env!("CARGO_BIN_EXE_arglab"))
        .current_dir(&dir)
        .args(["parse", "fx_ref_j"])
        .output()
        .expect("binary runs");
    assert_eq!(cwd_out.status.code(), Some(0));
    assert_eq!(stdout(&cwd_out).trim(), "axiom z.");
}

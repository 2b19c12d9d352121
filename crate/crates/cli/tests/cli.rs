//! End-to-end tests of the `pgroups` binary: output shape, exit codes,
//! and the spec-file cache.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pgroups"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const Q8: &str = "<a, b | a^4 = 1, b^2 = a^2, a^b = a^-1>";

#[test]
fn analyze_table_reports_q8() {
    let out = run(&["analyze", Q8]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("order"), "missing order row:\n{text}");
    assert!(text.contains('8'), "missing order value:\n{text}");
    assert!(text.contains("hamiltonian"), "Q8 is Hamiltonian:\n{text}");
}

#[test]
fn analyze_json_is_valid_and_exact() {
    let out = run(&["analyze", "--format", "json", Q8]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["order"], 8);
    assert_eq!(v["prime"], 2);
    assert_eq!(v["sbr"], 0);
    assert_eq!(v["ebr"], 1);
    assert_eq!(v["center_index"], 4);
    assert_eq!(v["involution_count"], 1);
}

#[test]
fn verify_single_suite_exits_zero() {
    let out = run(&["verify", "--suite", "dedekind", "--max-order", "16", "--format", "json"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let report = if v.is_array() { &v[0] } else { &v };
    assert_eq!(report["suite_name"], "dedekind");
    assert_eq!(report["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_list_suites_names_catalog() {
    let out = run(&["verify", "--list-suites"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["main_bound", "tc_co_nc", "sharpness", "conjecture_scan"] {
        assert!(text.contains(name), "catalog missing {name}:\n{text}");
    }
}

#[test]
fn unknown_suite_exits_two() {
    let out = run(&["verify", "--suite", "no_such_suite", "--max-order", "16"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_presentation_exits_two() {
    let out = run(&["analyze", "<a | a^"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn infinite_presentation_exits_three() {
    // free on one generator after the single relator: never closes
    let out = run(&["analyze", "<a, b | b^2 = 1>"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn lattice_json_counts_d8_subgroups() {
    let out = run(&["lattice", "<a, b | a^4 = 1, b^2 = 1, a^b = a^-1>"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["total_subgroups"], 10);
    assert_eq!(v["group_order"], 8);
}

#[test]
fn corpus_list_prints_groups() {
    let out = run(&["corpus", "--max-order", "16", "--list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    assert!(lines.len() >= 10, "expected >= 10 corpus lines:\n{text}");
    assert!(text.contains("Z2"), "no Z2 entry:\n{text}");
    assert!(text.contains("Z2xZ2xZ2"), "no elementary abelian entry:\n{text}");
    assert!(
        text.contains("pairwise non-isomorphic"),
        "missing summary line:\n{text}"
    );
}

#[test]
fn spec_file_builds_and_caches() {
    let dir = std::env::temp_dir().join(format!("pgroups-cli-test-{}", std::process::id()));
    let cache = dir.join("cache");
    std::fs::create_dir_all(&dir).unwrap();
    let spec_path: PathBuf = dir.join("q16.json");
    std::fs::write(
        &spec_path,
        r#"{"kind": "quaternion", "params": {"order": 16}}"#,
    )
    .unwrap();

    let run_with_cache = || {
        bin()
            .args(["analyze", "--format", "json", "--spec"])
            .arg(&spec_path)
            .env("PGROUPS_CACHE_DIR", &cache)
            .output()
            .expect("binary runs")
    };

    let first = run_with_cache();
    assert!(first.status.success(), "stderr: {}", String::from_utf8_lossy(&first.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v["order"], 16);

    // the cache directory now holds exactly one serialized group, and a
    // second run reproduces the same report from it
    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(entries.len(), 1, "expected one cache entry");

    let second = run_with_cache();
    assert!(second.status.success());
    assert_eq!(stdout(&first), stdout(&second));

    std::fs::remove_dir_all(&dir).ok();
}

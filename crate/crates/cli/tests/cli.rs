use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surflift")).args(args).output().expect("binary runs")
}

fn run_fixture(task: &str, name: &str, extra: &[&str]) -> (i32, String, String) {
    let path = fixture(name);
    let mut args = vec![task, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_report(task: &str, name: &str, extra: &[&str]) -> (i32, Value, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut args = extra.to_vec();
    args.extend_from_slice(&["--json", out.to_str().unwrap()]);
    let (code, _, _) = run_fixture(task, name, &args);
    let raw = std::fs::read_to_string(&out).unwrap();
    (code, serde_json::from_str(&raw).unwrap(), raw)
}

#[test]
fn validate_accepts_s3() {
    let (code, stdout, _) = run_fixture("validate", "s3_count.json", &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("group S3: order 6"));
    assert!(stdout.ends_with("valid\n"));
}

#[test]
fn validate_reports_non_associative_triple() {
    let (code, _, stderr) = run_fixture("validate", "nonassociative.json", &[]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not associative: (1*1)*2 != 1*(1*2)"), "{stderr}");
}

#[test]
fn validate_names_relator_value() {
    let (code, _, stderr) = run_fixture("validate", "q8_relator.json", &[]);
    assert_eq!(code, 2);
    assert!(stderr.contains("surface_hom") && stderr.contains("is -1"), "{stderr}");
}

#[test]
fn count_s3_agrees_with_enumeration() {
    let (code, stdout, _) = run_fixture("count", "s3_count.json", &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("rounded: 3"));
    assert!(stdout.contains("enumeration: 3"));
    assert!(!stdout.contains("FAIL"));
    let (_, doc, _) = json_report("count", "s3_count.json", &[]);
    assert_eq!(doc["agreed"], true);
    assert_eq!(doc["report"]["count"]["rounded"], 3);
    assert_eq!(doc["report"]["count"]["oracle"], 3);
    assert_eq!(doc["report"]["count"]["formula"], serde_json::json!([3.0, 0.0]));
}

#[test]
fn count_q8_surjective_notes_obstruction() {
    let (code, stdout, _) = run_fixture("count", "q8_surjective.json", &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("rounded: 0"));
    assert!(stdout.contains("enumeration: 0"));
    assert!(stdout.contains("note: no lifts"));
}

#[test]
fn count_without_oracle_at_large_genus() {
    let (code, stdout, _) = run_fixture("count", "s3_count.json", &["--no-oracle", "--genus", "8"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("genus: 8"));
    assert!(stdout.contains(&format!("rounded: {}", 3u64.pow(15))));
    assert!(!stdout.contains("enumeration"));
}

#[test]
fn budget_exceeded_exits_four() {
    let (code, _, stderr) = run_fixture("count", "s3_count.json", &["--genus", "3", "--budget", "100"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("budget"), "{stderr}");
}

#[test]
fn task_mismatch_is_a_validation_failure() {
    let (code, _, _) = run_fixture("irr", "s3_count.json", &[]);
    assert_eq!(code, 2);
}

#[test]
fn missing_file_is_a_validation_failure() {
    let (code, _, _) = run_fixture("count", "no_such_file.json", &[]);
    assert_eq!(code, 2);
}

#[test]
fn irr_lists_s3_characters() {
    let (code, stdout, _) = run_fixture("irr", "s3_irr.json", &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("3 irreducibles"));
    assert!(stdout.contains("Σ dim² = 6  Schur test: pass"));
    let (_, doc, _) = json_report("irr", "s3_irr.json", &[]);
    let mut dims: Vec<u64> = doc["report"]["irreducibles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["dim"].as_u64().unwrap())
        .collect();
    dims.sort();
    assert_eq!(dims, vec![1, 1, 2]);
}

#[test]
fn vk_vanishes_on_q8_surjective() {
    let (code, doc, _) = json_report("vk", "q8_vk.json", &[]);
    assert_eq!(code, 0);
    let entries = doc["report"]["vk"]["entries"].as_array().unwrap();
    assert_eq!(entries[0]["k"], 1);
    assert_eq!(entries[0]["value"], 0);
    assert_eq!(doc["report"]["reversal_symmetric"], true);
}

#[test]
fn t2_symplectic_gives_four() {
    let (code, stdout, _) = run_fixture("t2", "symplectic_t2.json", &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("formula: 4.000000"));
    assert!(stdout.contains("check oracle               pass"));
}

#[test]
fn h1_trivial_action_on_s3() {
    let (code, stdout, _) = run_fixture("h1", "s3_h1.json", &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("rounded: 3"));
    assert!(stdout.contains("|Z¹| = 18"));
}

#[test]
fn h1_inversion_on_z3() {
    let (code, stdout, _) = run_fixture("h1", "z3_inversion_h1.json", &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("|Z¹| = 3, |H¹| = 1"));
}

#[test]
fn sections_bundles_and_genusbound() {
    assert_eq!(run_fixture("sections", "s3_sections.json", &[]).0, 0);
    let (code, stdout, _) = run_fixture("bundles", "s4_bundles.json", &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("check orbit-weights        pass"));
    let (code, stdout, _) = run_fixture("genusbound", "q8_genusbound.json", &[]);
    assert_eq!(code, 0);
    assert!(stdout.contains("genus norm >= 1"));
}

#[test]
fn json_reports_are_byte_stable() {
    for (task, name) in [("count", "s3_count.json"), ("t2", "symplectic_t2.json"), ("irr", "s3_irr.json")] {
        let (_, _, a) = json_report(task, name, &["--seed", "7"]);
        let (_, _, b) = json_report(task, name, &["--seed", "7", "--threads", "3"]);
        assert_eq!(a, b, "{task} {name}");
        let (_, doc, _) = json_report(task, name, &["--seed", "7"]);
        assert_eq!(doc["config"]["seed"], 7);
    }
}

#[test]
fn text_reports_are_byte_stable() {
    let a = run_fixture("count", "s3_count.json", &["--genus", "2"]);
    let b = run_fixture("count", "s3_count.json", &["--genus", "2"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    let a = run_fixture("bundles", "s4_bundles.json", &[]);
    let b = run_fixture("bundles", "s4_bundles.json", &[]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

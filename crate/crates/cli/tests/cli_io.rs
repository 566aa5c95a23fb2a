//! End-to-end checks of the installed binary: flags, exit codes, JSON
//! schema, and report determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fano-strata"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn analyze_text_contains_the_table_and_exits_zero() {
    let out = run(&["analyze", "--n", "4", "--r", "1", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("delta = 2"));
    assert!(text.contains("candidate_max = 10"));
    assert!(text.contains("sharpness: holds"));
}

#[test]
fn analyze_json_schema_is_stable() {
    let out = run(&["analyze", "--n", "5", "--r", "1", "--d", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["command"], "analyze");
    assert_eq!(v["constants"]["delta"], 2);
    assert_eq!(v["constants"]["delta_lower"], 2);
    assert_eq!(v["comparison_range"]["iso_max_index"], 1);
    assert_eq!(v["comparison_range"]["injective_index"], 2);
    assert_eq!(v["verdicts"]["inequality"], "holds");
    assert!(v["table"]["rows"].as_array().unwrap().len() == 2);
    // Identical invocation gives byte-identical output.
    let again = run(&["analyze", "--n", "5", "--r", "1", "--d", "5", "--format", "json"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn apolar_reports_rank_and_rational_scalars() {
    let out = run(&["apolar", "x0^3 + x1^3", "--n", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["rank"], 2);
    assert_eq!(v["essential"]["dim"], 2);
    assert_eq!(v["essential"]["rows"][0][0], 1);
    assert_eq!(v["field"]["kind"], "rationals");
    // Rational coefficients serialize as "p/q" strings.
    let frac = run(&["apolar", "1/2*x0^2", "--n", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&frac)).unwrap();
    assert_eq!(v["tuple"], "1/2*x0^2");
}

#[test]
fn apolar_rejects_small_characteristic_with_exit_two() {
    let out = run(&["apolar", "x0^3", "--n", "2", "--q", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("characteristic"), "stderr: {err}");
}

#[test]
fn parse_errors_exit_two() {
    let out = run(&["apolar", "x0^2 + x1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["apolar", "3*", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fano_count_members_and_crosscheck() {
    let out = run(&[
        "fano-count",
        "x0*x3 - x1*x2",
        "--n",
        "3",
        "--r",
        "1",
        "--q",
        "3",
        "--members",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 8);
    assert_eq!(v["members"].as_array().unwrap().len(), 8);
    assert_eq!(v["pointwise_crosscheck"], true);
    for m in v["members"].as_array().unwrap() {
        assert_eq!(m["dim"], 2);
        assert_eq!(m["ambient"], 4);
    }
}

#[test]
fn zero_tuple_cites_the_trivial_case() {
    let out = run(&["fano-count", "0", "--n", "3", "--r", "1", "--q", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("trivial"), "stderr: {err}");
}

#[test]
fn cap_exceeded_exits_three() {
    let out = run(&[
        "fano-count", "x3", "--n", "3", "--r", "1", "--q", "3", "--cap", "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn env_var_sets_the_cap_and_flag_wins() {
    let out = bin()
        .args(["fano-count", "x3", "--n", "3", "--r", "1", "--q", "3"])
        .env("FANO_STRATA_ENUM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin()
        .args(["fano-count", "x3", "--n", "3", "--r", "1", "--q", "3", "--cap", "100000"])
        .env("FANO_STRATA_ENUM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn forms_can_come_from_a_file() {
    let dir = std::env::temp_dir().join("fano_strata_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tuple.txt");
    std::fs::write(&path, "x0^3 + x1^3 + x2^3 + x3^3\n").unwrap();
    let out = run(&[
        "fano-count",
        "--file",
        path.to_str().unwrap(),
        "--n",
        "3",
        "--r",
        "1",
        "--q",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("count = 27"));
}

#[test]
fn verify_suite_exit_codes_and_seed_echo() {
    let out = run(&[
        "verify",
        "fiber-law",
        "--q",
        "5",
        "--n",
        "3",
        "--r",
        "1",
        "--d",
        "2",
        "--translates",
        "2",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["passed"], true);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert!(v["cases"].as_u64().unwrap() >= 6);

    let unknown = run(&["verify", "no-such-suite"]);
    assert_eq!(unknown.status.code(), Some(2)); // clap usage error
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["analyze", "--n", "2", "--r", "5", "--d", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["analyze"]);
    assert_eq!(out.status.code(), Some(2));
}

//! End-to-end runs of the `cantorcert` binary: exit codes and output formats.

use std::process::{Command, Output};

use cantorcert::coverage::Certificate;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cantorcert"))
        .args(args)
        .env_remove("CANTORCERT_RANK_LIMIT")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn fk_certificate_json_round_trips() {
    let out = run(&["certify", "fk", "--lambda", "47/100", "--k", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["conclusion"]["range"], "[0, 1]");
    assert_eq!(json["lambda"], "47/100");
    let cert = Certificate::from_json(&text).unwrap();
    assert!(cert.is_consistent());
    assert_eq!(cert.to_json(), text.trim_end());
}

#[test]
fn failed_certification_exits_2() {
    assert_eq!(code(&run(&["certify", "st", "--lambda", "42/100"])), 2);
    assert_eq!(code(&run(&["certify", "fk", "--lambda", "45/100", "--k", "2"])), 2);
    assert_eq!(code(&run(&["certify", "circle", "--lambda", "0.45"])), 2);
    assert_eq!(code(&run(&["certify", "st", "--lambda", "0.44"])), 0);
    assert_eq!(
        code(&run(&["witness", "--lambda", "42/100", "--t", "1/2", "--depth", "2"])),
        2
    );
}

#[test]
fn malformed_input_exits_1() {
    for args in [
        &["certify", "st", "--lambda", "0.7"][..],
        &["certify", "st", "--lambda", "abc"],
        &["certify", "fk", "--lambda", "47/100"],
        &["lambda-k", "--k", "1"],
        &["gaps", "--lambda", "1/3", "--k", "4", "--rank", "11"],
        &["witness", "--lambda", "9/20", "--t", "3/2", "--depth", "2"],
        &["check-lemma", "2.2", "--lambda", "9/20", "--i", "10", "--j", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&run(args)), 1, "{args:?}");
    }
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn stalled_expansion_exits_3() {
    let out = run(&[
        "witness",
        "--lambda",
        "9/20",
        "--t",
        "1/2",
        "--depth",
        "2",
        "--scan-limit",
        "0",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn gaps_report_exact_endpoints() {
    let out = run(&["gaps", "--lambda", "1/3", "--k", "4", "--rank", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        json["gaps"],
        serde_json::json!([["2401/19683", "32/243"], ["2401/6561", "8192/19683"]])
    );
    assert_eq!(json["refutes_coverage"], true);

    let csv = stdout(&run(&[
        "gaps", "--lambda", "1/3", "--k", "4", "--rank", "2", "--format", "csv",
    ]));
    assert!(csv.starts_with("kind,lo,hi\n"));
    assert_eq!(csv.lines().filter(|l| l.starts_with("gap,")).count(), 2);
}

#[test]
fn rank_limit_comes_from_environment() {
    let args = ["enumerate", "--rank", "11", "--lambda", "1/3", "--format", "csv"];
    assert_eq!(code(&run(&args)), 1);
    let out = Command::new(env!("CARGO_BIN_EXE_cantorcert"))
        .args(args)
        .env("CANTORCERT_RANK_LIMIT", "12")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn thresholds_table_lists_table1_row_3() {
    let out = run(&["thresholds"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let row = text
        .lines()
        .find(|l| l.starts_with("table1_row(3)"))
        .expect("row present");
    assert!(row.contains("0.43016") && row.contains("0.4302"), "{row}");
}

#[test]
fn lambda_k_brackets_closed_form() {
    let out = run(&["lambda-k", "--k", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0.464102"));
}

#[test]
fn witness_leaves_csv() {
    let out = run(&[
        "witness",
        "--lambda",
        "9/20",
        "--t",
        "1/2",
        "--depth",
        "3",
        "--leaves-only",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("leaf,address_i,address_j,rank,image_lo,image_hi"));
    assert_eq!(lines.count(), 8);
}

#[test]
fn check_lemma_reports_cover_flags() {
    let out = run(&[
        "check-lemma",
        "2.3",
        "--lambda",
        "45/100",
        "--i",
        "101",
        "--j",
        "101",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["cover"], true);
    assert_eq!(json["double_cover"], true);
}

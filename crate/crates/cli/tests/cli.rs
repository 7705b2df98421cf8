//! End-to-end runs of the binary: round trips, determinism, and exit
//! codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lowdisc"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lowdisc-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_vdc_matches_contract() {
    let out = run(&["gen", "--family", "vdc", "--base", "2", "--count", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x\n0\n1/2\n1/4\n3/4\n");
}

#[test]
fn gen_then_disc_round_trip_is_deterministic() {
    let pts = tmp("vdc4.csv");
    let rep = tmp("rep.json");
    let out = run(&[
        "gen",
        "--family",
        "vdc",
        "--base",
        "2",
        "--count",
        "4",
        "--out",
        pts.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let args = [
        "disc",
        "--input",
        pts.to_str().unwrap(),
        "--exact-json",
        rep.to_str().unwrap(),
    ];
    assert!(run(&args).status.success());
    let a = fs::read(&rep).unwrap();
    assert!(run(&args).status.success());
    let b = fs::read(&rep).unwrap();
    assert_eq!(a, b, "reports differ across runs");
    let text = String::from_utf8(a).unwrap();
    assert!(
        text.contains("\"dstar\": \"1\""),
        "vdc prefix of 4 has D* = 1: {text}"
    );
}

#[test]
fn disc_which_prints_single_value() {
    let pts = tmp("h22.csv");
    let out = run(&[
        "gen",
        "--family",
        "hammersley",
        "--base",
        "2",
        "--m",
        "1",
        "--out",
        pts.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&["disc", "--input", pts.to_str().unwrap(), "--which", "dstar"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3/2");
}

#[test]
fn check_net_reports_quality_and_exit_codes() {
    let pts = tmp("h23.csv");
    run(&[
        "gen",
        "--family",
        "hammersley",
        "--base",
        "2",
        "--m",
        "3",
        "--out",
        pts.to_str().unwrap(),
    ]);
    let out = run(&[
        "check-net",
        "--input",
        pts.to_str().unwrap(),
        "--base",
        "2",
        "--m",
        "3",
        "--t",
        "0",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"minimal_t\": 0"));

    // a degenerate multiset fails t = 0 with exit code 1
    let bad = tmp("bad.csv");
    fs::write(&bad, "x,y\n0,0\n0,0\n0,0\n0,0\n").unwrap();
    let out = run(&[
        "check-net",
        "--input",
        bad.to_str().unwrap(),
        "--base",
        "2",
        "--m",
        "2",
        "--t",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["gen", "--family", "gvdc", "--base", "2", "--count", "4"]);
    assert_eq!(out.status.code(), Some(2), "missing --perm-seq");
    let out = run(&["disc", "--input", "/nonexistent/points.csv"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["suite", "--select", "not-a-check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn caps_exit_three() {
    let out = run(&[
        "gen", "--family", "vdc", "--base", "2", "--count", "99999999",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // two-dimensional sweep cap
    let pts = tmp("big.csv");
    let mut text = String::from("x,y\n");
    for i in 0..9000 {
        text.push_str(&format!("{i}/9000,{i}/9000\n"));
    }
    fs::write(&pts, text).unwrap();
    let out = run(&["disc", "--input", pts.to_str().unwrap(), "--dim", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn scrambled_family_and_precision_flag() {
    let out = run(&[
        "gen",
        "--family",
        "scrambled-nut",
        "--base",
        "2",
        "--count",
        "4",
        "--perm-seq",
        "constant:tau",
        "--precision",
        "3",
    ]);
    assert!(out.status.success());
    // swapped scrambling of the identity matrix, truncated to 3 digits
    assert_eq!(stdout(&out), "x\n7/8\n3/8\n5/8\n1/8\n");
}

#[test]
fn config_file_sets_flags_and_cli_overrides() {
    let cfg = tmp("suite.cfg");
    fs::write(
        &cfg,
        "select = repeat-worst\nm-max = 4\nn-max = 32\nsamples = 4\n",
    )
    .unwrap();
    let out = run(&["suite", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("repeat-worst"));
    assert!(!stdout(&out).contains("net-bound-floor"));
    // explicit flag wins over the file entry
    let out = run(&[
        "suite",
        "--config",
        cfg.to_str().unwrap(),
        "--select",
        "first-column-base2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("first-column-base2"));
    assert!(!stdout(&out).contains("repeat-worst"));
}

#[test]
fn walsh_single_pair_agrees() {
    let out = run(&[
        "walsh", "--m", "3", "--c2", "reversal", "--eta", "5", "--beta", "3",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"agree\": true"));
}

#[test]
fn suite_subset_exit_zero_and_report_written() {
    let rep = tmp("suite.json");
    let out = run(&[
        "suite",
        "--select",
        "hammersley-halves-window",
        "--m-max",
        "5",
        "--out",
        rep.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&rep).unwrap();
    assert!(text.contains("\"all_passed\": true"));
    assert!(text.contains("\"seed\""));
}

#[test]
fn psi_tabulation_has_all_columns() {
    let out = run(&["psi", "--base", "3", "--sigma", "id", "--step", "9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let header = text.lines().next().unwrap();
    assert_eq!(header, "x,phi0,phi1,phi2,psi_plus,psi_minus,psi");
    assert_eq!(text.lines().count(), 11);
}

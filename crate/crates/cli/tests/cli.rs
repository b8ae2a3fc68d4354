use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn lexsynt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexsynt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_prints_value() {
    let o = lexsynt(&["verify", "--spec", &fixture("C.qa"), "--impl", &fixture("Mfig6.mealy")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "value = (2)\n");
}

#[test]
fn eval_prints_value() {
    let o = lexsynt(&["eval", "--spec", &fixture("A2.qa"), "--word", "| {r} {g} {g}"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "value = (2/3)\n");
}

#[test]
fn limit_only_verdict() {
    let o = lexsynt(&["realizable", "--spec", &fixture("phiA1.qa"), "--cutoff", "(1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("limit-only"));
}

#[test]
fn output_is_deterministic() {
    let args = ["synthesize", "--spec", &fixture("phiA1.qa"), "--epsilon", "(1/4)"];
    let first = stdout(&lexsynt(&args));
    assert!(first.starts_with("value = (1)\n"));
    for _ in 0..3 {
        assert_eq!(stdout(&lexsynt(&args)), first);
    }
    let jobs = stdout(&lexsynt(&[&args[..], &["--jobs", "3"]].concat()));
    assert_eq!(jobs, first);
}

#[test]
fn synthesized_machine_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.mealy");
    let m = m.to_str().unwrap();
    let o = lexsynt(&["synthesize", "--spec", &fixture("C.qa"), "--out", m]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "value = (2)\nmachine value = (2)\n");
    let v = lexsynt(&["verify", "--spec", &fixture("C.qa"), "--impl", m]);
    assert_eq!(stdout(&v), "value = (2)\n");
    let r = lexsynt(&["realizable", "--spec", &fixture("C.qa"), "--cutoff", "(2)", "--out", m]);
    assert_eq!(stdout(&r), "realizable\nvalue = (2)\n");
    assert_eq!(stdout(&lexsynt(&["verify", "--spec", &fixture("C.qa"), "--impl", m])), "value = (2)\n");
}

#[test]
fn solve_game() {
    let o = lexsynt(&["solve", "--game", &fixture("fig5.game")]);
    assert_eq!(stdout(&o), "s0 = (10)\ns1 = (10)\n");
    let o = lexsynt(&["solve", "--game", &fixture("fig6.game")]);
    assert_eq!(stdout(&o).lines().next(), Some("q0 = (2)"));
}

#[test]
fn exit_codes() {
    assert_eq!(lexsynt(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(lexsynt(&["eval", "--spec", &fixture("A2.qa")]).status.code(), Some(1));
    assert_eq!(lexsynt(&["eval", "--spec", &fixture("A2.qa"), "--word", "{r}"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qa");
    let text = std::fs::read_to_string(fixture("A1.qa")).unwrap().replace("edge q0 q0 {*r,g} (0)\n", "");
    std::fs::write(&bad, text).unwrap();
    let o = lexsynt(&["eval", "--spec", bad.to_str().unwrap(), "--word", "| {}"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("incomplete at state q0: {-r,g}"));
    let o = lexsynt(&["synthesize", "--spec", &fixture("phiA1.qa")]);
    assert_eq!(o.status.code(), Some(1));
    let o = lexsynt(&["solve", "--game", &fixture("fig5.game"), "--memory-cap", "1", "--deadline-seconds", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn witnesses() {
    let o = lexsynt(&["verify", "--spec", &fixture("A1.qa"), "--impl", &fixture("M1.mealy"), "--witness"]);
    let text = stdout(&o);
    assert!(text.starts_with("value = (0)\nword = "), "{text}");
    let o = lexsynt(&["eval", "--spec", &fixture("A2.qa"), "--word", "| {r} {g} {g}", "--witness"]);
    assert_eq!(stdout(&o), "value = (2/3)\nrun = | q0 q1 q0\n");
}

#[test]
fn hidden_oracle() {
    let o = lexsynt(&["oracle", "--game", &fixture("fig5.game")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("s0 in [(5), (10)]"));
    let help = stdout(&lexsynt(&["--help"]));
    assert!(!help.contains("oracle"));
}

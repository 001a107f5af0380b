//! End-to-end tests of the command-line surface: verdict lines, exit codes
//! and byte-deterministic output.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_podwa"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn tmp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("podwa-cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn gen_to_file(name: &str, args: &[&str]) -> PathBuf {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {out:?}");
    tmp(name, &stdout(&out))
}

#[test]
fn observe_counting_instance() {
    let f = gen_to_file("cc.podwa", &["gen", "ccount"]);
    let out = run(&["observe", f.to_str().unwrap(), "--word", "c"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1");
    let out = run(&["eval", f.to_str().unwrap(), "--word", "cca"]);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn equivalent_pair_exits_zero() {
    let a = gen_to_file("l3.podwa", &["gen", "lambda-n", "3"]);
    let b = gen_to_file("m3.podwa", &["gen", "lambda-n-min", "3"]);
    let out = run(&["equiv", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("EQUIVALENT"));
}

#[test]
fn witness_pair_exits_one_with_report_line() {
    let a = gen_to_file("s61.podwa", &["gen", "subset-sum", "2,4", "6", "--which", "1"]);
    let b = gen_to_file("s62.podwa", &["gen", "subset-sum", "2,4", "6", "--which", "2"]);
    let out = run(&["equiv", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("NOT_EQUIVALENT"));
    assert_eq!(lines.next(), Some("witness 110 v1=0 v2=1 i1=0 i2=1"));
}

#[test]
fn json_verdict_object() {
    let a = gen_to_file("j1.podwa", &["gen", "subset-sum", "2,4", "6", "--which", "1"]);
    let b = gen_to_file("j2.podwa", &["gen", "subset-sum", "2,4", "6", "--which", "2"]);
    let out = run(&["equiv", a.to_str().unwrap(), b.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["verdict"], "NOT_EQUIVALENT");
    assert_eq!(v["witness"], "110");
    assert_eq!(v["values"][0], 0);
    assert_eq!(v["indices"][1], 1);
    assert!(v["timings"]["total_ms"].is_u64());
}

#[test]
fn complement_flips_observation() {
    let f = gen_to_file("cc2.podwa", &["gen", "ccount"]);
    let out = run(&["complement", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let comp = tmp("cc2-comp.podwa", &stdout(&out));
    let obs = run(&["observe", comp.to_str().unwrap(), "--word", "a"]);
    assert_eq!(stdout(&obs).trim(), "1");
    let obs = run(&["observe", comp.to_str().unwrap(), "--word", "c"]);
    assert_eq!(stdout(&obs).trim(), "0");
}

#[test]
fn scale_moves_cuts() {
    let f = gen_to_file("cc3.podwa", &["gen", "ccount"]);
    let out = run(&["scale", f.to_str().unwrap(), "--alpha", "2", "--beta", "3"]);
    assert!(stdout(&out).contains("cuts: 5"));
}

#[test]
fn min_exact_collapses_identical_rows() {
    let text = "dwa\nalphabet: a\nstates: p q\ninitial: p\ntrans: p a q 1\ntrans: q a q 1\n";
    let f = tmp("dup.dwa", text);
    let out = run(&["min-exact", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("states: p\n"));
}

#[test]
fn omin_merge_reports_none_at_tight_bound() {
    let a = gen_to_file("l2.podwa", &["gen", "lambda-n", "2"]);
    let out = run(&[
        "omin-merge",
        a.to_str().unwrap(),
        "--k",
        "4",
        "--weight-bound",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "NONE");
    // identity merging always succeeds when k covers every state
    let out = run(&["omin-merge", a.to_str().unwrap(), "--k", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("podwa\n"));
}

#[test]
fn fit_and_check_sample() {
    let cnf = tmp("f.cnf", "p cnf 1 1\n1 0\n");
    let sample = gen_to_file("f.sample", &["gen", "sat-sample", cnf.to_str().unwrap()]);
    let out = run(&[
        "fit-sample",
        sample.to_str().unwrap(),
        "--single-state",
        "--bound",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let fitted = tmp("fitted.podwa", &stdout(&out));
    let check = run(&[
        "check-sample",
        fitted.to_str().unwrap(),
        sample.to_str().unwrap(),
    ]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(stdout(&check).trim(), "CONSISTENT");
    // an unsatisfiable encoding has no one-state fit but still a tree fit
    let cnf2 = tmp("g.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let sample2 = gen_to_file("g.sample", &["gen", "sat-sample", cnf2.to_str().unwrap()]);
    let out = run(&[
        "fit-sample",
        sample2.to_str().unwrap(),
        "--single-state",
        "--bound",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "NONE");
    let out = run(&["fit-sample", sample2.to_str().unwrap(), "--tree"]);
    assert_eq!(out.status.code(), Some(0));
    let tree = tmp("tree.podwa", &stdout(&out));
    let check = run(&[
        "check-sample",
        tree.to_str().unwrap(),
        sample2.to_str().unwrap(),
    ]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn check_sample_reports_mismatches() {
    let f = gen_to_file("cc4.podwa", &["gen", "ccount"]);
    let sample = tmp(
        "bad.sample",
        "sample\nalphabet: a b c\ncuts: 1\nentry: a 1\n",
    );
    let out = run(&[
        "check-sample",
        f.to_str().unwrap(),
        sample.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("INCONSISTENT"));
    assert!(text.contains("mismatch a expected=1 actual=0"));
}

#[test]
fn coloring_generator_from_graph_file() {
    let g = tmp("p3.graph", "edge u v\nedge v w\n");
    let out = run(&["gen", "coloring", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("states: q0 qf v_u v_v v_w"));
}

#[test]
fn deterministic_output_for_fixed_seed() {
    let args = [
        "gen", "random", "--seed", "7", "--states", "3", "--letters", "2", "--max-weight",
        "2", "--cuts", "0,2",
    ];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    assert!(a.starts_with("podwa\n"));
}

#[test]
fn usage_and_data_error_exit_codes() {
    let out = run(&["equiv"]); // missing arguments
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["observe", "/nonexistent.podwa", "--word", "a"]);
    assert_eq!(out.status.code(), Some(4));
    // malformed file
    let bad = tmp("bad.podwa", "podwa\nalphabet: a\n");
    let out = run(&["observe", bad.to_str().unwrap(), "--word", "a"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn brute_witness_matches_engine() {
    let a = gen_to_file("bw1.podwa", &["gen", "subset-sum", "2,4", "6", "--which", "1"]);
    let b = gen_to_file("bw2.podwa", &["gen", "subset-sum", "2,4", "6", "--which", "2"]);
    let out = run(&[
        "brute-witness",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--max-len",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("witness 110"));
}

#[test]
fn dot_export() {
    let f = gen_to_file("cc5.podwa", &["gen", "ccount"]);
    let out = run(&["dot", f.to_str().unwrap()]);
    assert!(stdout(&out).starts_with("digraph"));
}

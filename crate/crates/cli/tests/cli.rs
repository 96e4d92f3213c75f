use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fiedler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fiedler"))
        .args(args)
        .env_remove("FIEDLER_PARALLELISM")
        .output()
        .unwrap()
}

fn fiedler_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fiedler"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_exit_codes() {
    let out = fiedler(&["analyze", "path", "10", "--strict"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 10);

    let rose = stdout(&fiedler(&["gen", "rose-on-path", "9", "3", "12"]));
    assert_eq!(rose.lines().count(), 22);
    let out = fiedler_stdin(&["analyze", "-i", "-", "--relaxed"], &rose);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dot_output_has_one_node_line_per_vertex() {
    let out = fiedler(&["analyze", "path", "6", "--format", "dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.contains("[label=")).count(), 6);
    assert_eq!(text.lines().filter(|l| l.contains(" -- ")).count(), 5);
}

#[test]
fn hitting_times_on_p3() {
    let v = json(&fiedler(&["hit", "path", "3", "--target", "0"]));
    assert_eq!(v["hit_max"].as_f64(), Some(4.0));
    assert_eq!(v["argmax"], 2);
    let v = json(&fiedler(&[
        "hit", "path", "3", "--target", "2", "--from", "0",
    ]));
    let visits: Vec<f64> = v["encounters"]["visits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(visits, vec![2.0, 2.0, 0.0]);
}

#[test]
fn game_on_p2() {
    let out = fiedler(&[
        "game", "path", "2", "--from", "0", "--to", "1", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let exact = v["exact"].as_f64().unwrap();
    assert!((exact - 2f64.sqrt()).abs() < 1e-12);
    assert!((v["mc_mean"].as_f64().unwrap() - exact).abs() < 1e-9);
    assert_eq!(v["truncated_samples"], 0);
}

#[test]
fn survey_and_enumerate() {
    let v = json(&fiedler(&["survey", "--n", "4"]));
    assert_eq!(v["total"], 2);
    assert_eq!(v["census_matches"], true);
    let out = stdout(&fiedler(&["enumerate", "--n", "5"]));
    assert_eq!(
        out.lines().collect::<Vec<_>>(),
        vec!["code", "01212", "01211", "01111"]
    );
    assert_eq!(
        stdout(&fiedler(&["enumerate", "--n", "12", "--count"])).trim(),
        "551"
    );
}

#[test]
fn survey_writes_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("s9");
    let prefix = prefix.to_str().unwrap();
    let first = fiedler(&[
        "survey",
        "--n",
        "9",
        "-o",
        prefix,
        "--checkpoint-every",
        "10",
    ]);
    assert!(first.status.success());
    let csv = std::fs::read_to_string(format!("{prefix}.csv")).unwrap();
    // header plus every tree, degenerate ones included
    assert_eq!(csv.lines().count(), 1 + 47);
    let again = fiedler(&["survey", "--n", "9", "-o", prefix, "--resume"]);
    assert_eq!(stdout(&first), stdout(&again));
    assert_eq!(
        csv,
        std::fs::read_to_string(format!("{prefix}.csv")).unwrap()
    );
}

#[test]
fn caterpillar_checks() {
    assert_eq!(
        fiedler(&["check", "--caterpillar", "100;50=2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        fiedler(&["check", "--caterpillar", "100;50=3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        fiedler(&["check", "--caterpillar", "100;500=3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn graph6_input_is_detected() {
    let g6 = stdout(&fiedler(&["gen", "path", "5", "--format", "graph6"]));
    let from_g6 = fiedler_stdin(&["analyze", "-i", "-"], &g6);
    let direct = fiedler(&["analyze", "path", "5"]);
    assert_eq!(stdout(&from_g6), stdout(&direct));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(fiedler(&["bogus"]).status.code(), Some(2));
    assert_eq!(fiedler(&["analyze"]).status.code(), Some(2));
    assert_eq!(
        fiedler(&["--parallelism", "0", "analyze", "path", "4"])
            .status
            .code(),
        Some(2)
    );
    let out = fiedler_stdin(&["analyze", "-i", "-"], "0 1\n0 x\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let forest = fiedler_stdin(&["analyze", "-i", "-"], "0 1\n2 3\n");
    assert_eq!(forest.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &[
            "game",
            "rose-on-path",
            "9",
            "3",
            "12",
            "--from",
            "15",
            "--to",
            "9",
            "--samples",
            "20000",
        ][..],
        &["survey", "--n", "10"][..],
        &["check", "--caterpillar", "100;50=2"][..],
    ] {
        let a = fiedler(args);
        let b = fiedler(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let mut par = vec!["--parallelism", "3"];
        par.extend_from_slice(args);
        assert_eq!(a.stdout, fiedler(&par).stdout, "{args:?}");
    }
}

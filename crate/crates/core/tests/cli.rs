use std::path::PathBuf;
use std::process::{Command, Output};

use cliquekit::Error;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliquekit")).args(args).env_remove("CLIQUEKIT_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn solve_reports_clique_in_both_formats() {
    let text = cli(&["solve", &data("cycle4.dimacs")]);
    assert_eq!(text.status.code(), Some(0));
    assert!(stdout(&text).contains("weight: 2"), "{}", stdout(&text));

    let v = json(&cli(&["--format", "json", "solve", &data("cycle4.dimacs")]));
    assert_eq!(v["weight"].as_f64(), Some(2.0));
}

#[test]
fn json_output_is_byte_stable() {
    let args = ["--format", "json", "--seed", "9", "app", "idnc", &data("idnc_generated.json")];
    assert_eq!(cli(&args).stdout, cli(&args).stdout);
}

#[test]
fn unmet_min_size_exits_three() {
    let o = cli(&["--min-size", "3", "solve", &data("cycle4.dimacs")]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.starts_with("error:"), "{err}");

    let greedy = cli(&["--algo", "greedy", "--min-size", "3", "solve", &data("cycle4.dimacs")]);
    assert_eq!(greedy.status.code(), Some(3));
}

#[test]
fn oracle_guard_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    std::fs::write(&path, r#"{"kind": "graph", "generator": {"n": 22, "density": 0.3, "seed": 1}}"#).unwrap();
    let p = path.to_str().unwrap();

    assert_eq!(cli(&["oracle", p]).status.code(), Some(4));
    assert_eq!(cli(&["--algo", "oracle", "solve", p]).status.code(), Some(4));

    let lifted = json(&cli(&["--guard-override", "--format", "json", "oracle", p]));
    let exact = json(&cli(&["--format", "json", "solve", p]));
    assert_eq!(lifted["weight"], exact["weight"]);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"kind": "graph", "body": {"n": 2, "edges": [[0, 5]]}}"#).unwrap();
    assert_eq!(cli(&["solve", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(cli(&["solve", "/nonexistent/graph.dimacs"]).status.code(), Some(2));
    assert_eq!(cli(&["--algo", "simplex", "solve", &data("cycle4.dimacs")]).status.code(), Some(2));
}

#[test]
fn exit_codes_by_error_kind() {
    assert_eq!(Error::Infeasible("x".into()).exit_code(), 3);
    assert_eq!(Error::GuardExceeded { size: 30, limit: 20 }.exit_code(), 4);
    assert_eq!(Error::ConstraintViolation("x".into()).exit_code(), 5);
}

#[test]
fn every_app_passes_its_check() {
    for (app, file) in [
        ("noma", "noma.json"),
        ("ic", "three_user_ic.json"),
        ("idnc", "three_user_idnc.json"),
        ("rfid", "rfid.json"),
        ("cran", "cran.json"),
    ] {
        let o = cli(&["app", app, &data(file)]);
        assert_eq!(o.status.code(), Some(0), "{app}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).trim_end().ends_with("check: pass"), "{app}: {}", stdout(&o));
    }
}

#[test]
fn app_rejects_scenario_of_other_kind() {
    assert_eq!(cli(&["app", "noma", &data("rfid.json")]).status.code(), Some(2));
}

#[test]
fn simulate_writes_csv_and_ignores_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let csv = dir.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_cliquekit"))
            .args(["--seed", "3", "--csv", csv.to_str().unwrap(), "simulate", &data("idnc_generated.json")])
            .args(["--replicas", "4"])
            .env("CLIQUEKIT_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        (o.stdout, std::fs::read_to_string(csv).unwrap())
    };
    let (out1, csv1) = run("1", "a.csv");
    let (out4, csv4) = run("4", "b.csv");
    assert_eq!(out1, out4);
    assert_eq!(csv1, csv4);
    assert_eq!(csv1.lines().next(), Some("replica,slot,combination,targeted,successes,cum_delay"));
    let replicas: std::collections::BTreeSet<&str> = csv1.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(replicas.len(), 4);
}

#[test]
fn invalid_thread_count_is_rejected() {
    let o = Command::new(env!("CARGO_BIN_EXE_cliquekit"))
        .args(["simulate", &data("three_user_perfect.json")])
        .env("CLIQUEKIT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_csv_has_one_row_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let o = cli(&[
        "--csv",
        csv.to_str().unwrap(),
        "bench",
        "--sizes",
        "8,12",
        "--densities",
        "0.3,0.7",
        "--seeds",
        "2",
        "--algos",
        "exact,greedy,bpso",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,density,seed,algo,wall_time_s,weight"));
    assert_eq!(lines.count(), 2 * 2 * 2 * 3);
}

#[test]
fn export_ip_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let lp = dir.path().join("g.lp");
    let o = cli(&["--min-size", "2", "export-ip", &data("cycle4.dimacs"), "--out", lp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let program = cliquekit::ip::parse_lp_text(&std::fs::read_to_string(lp).unwrap()).unwrap();
    assert_eq!(cliquekit::ip::bnb_solve_binary(&program).unwrap().objective, 2.0);
}

#[test]
fn independent_flag_solves_complement() {
    let v = json(&cli(&["--format", "json", "solve", "--independent", &data("cycle4.dimacs")]));
    assert_eq!(v["weight"].as_f64(), Some(2.0));
    let members: Vec<u64> = v["selected"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert!(members == [0, 2] || members == [1, 3], "{members:?}");
}

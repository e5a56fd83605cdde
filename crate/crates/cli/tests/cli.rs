use std::io::Write;
use std::process::{Command, Output, Stdio};

use antiauto_core::TableMap;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antiauto")).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_antiauto"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn exists_explicit_table() {
    let o = run(&["exists", "2,4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "Exists");
    assert_eq!(v["method"], "explicit-table-Z2Z4");
    let w = TableMap::from_json(&v["witness"].to_string()).unwrap();
    assert!(w.is_antiautomorphism());
}

#[test]
fn exists_unique_involution() {
    let o = run(&["exists", "12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"status":"NotExists","method":null,"reason":"unique-involution","witness":null}"#
    );
}

#[test]
fn exists_linear_on_z2_z4() {
    let o = run(&["exists", "2,4", "--mode", "bianti"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("NotExists"));
}

#[test]
fn unknown_exits_2() {
    // Z2 + Z2 + Z4 + Z3^3 is outside both the constructions and a search order of 8.
    let o = run(&["exists", "2,2,4,3,3,3", "--budget", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["status"], "Unknown");
}

#[test]
fn counts() {
    let o = run(&["count", "2,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "384\n");
    let o = run(&["count", "9", "--mode", "bianti"]);
    assert_eq!(stdout(&o), "3\n");
    let o = run(&["count", "2,2", "--format", "json"]);
    assert_eq!(stdout(&o).trim(), r#"{"count":8,"group":"2,2","mode":"anti"}"#);
}

#[test]
fn count_output_independent_of_jobs() {
    let outs: Vec<Vec<u8>> = ["1", "2", "8"]
        .iter()
        .map(|j| run(&["count", "9", "--jobs", j, "--format", "json"]).stdout)
        .collect();
    assert!(outs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn count_over_budget_fails() {
    let o = run(&["count", "2,2,2", "--budget", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn construct_companion_round_trips_through_check() {
    let o = run(&["construct", "8,8", "--method", "companion2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let map = TableMap::from_json(stdout(&o).trim()).unwrap();
    assert_eq!(map.len(), 64);
    let c = run_stdin(&["check", "--format", "json"], &stdout(&o));
    assert_eq!(c.status.code(), Some(0));
    let v = json(&c);
    assert_eq!(v["antiautomorphism"], true);
    assert_eq!(v["linear"], true);
}

#[test]
fn construct_methods() {
    for (group, method) in [
        ("7", "negation"),
        ("2,2,2,2,2", "elementary2"),
        ("2,2,2", "table"),
        ("4,2", "table"),
        ("9", "multiplier:2,5"),
        ("15", "multiplier:2"),
    ] {
        let o = run(&["construct", group, "--method", method, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{group} {method}");
        let map = TableMap::from_json(stdout(&o).trim()).unwrap();
        assert_eq!(map.group().to_string(), group);
        assert!(map.is_antiautomorphism());
    }
}

#[test]
fn construct_inapplicable() {
    let o = run(&["construct", "12", "--method", "negation"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["construct", "9", "--method", "multiplier:4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["construct", "2,4", "--method", "companion2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn enumerate_streams_in_order() {
    let o = run(&["enumerate", "2,2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let maps: Vec<TableMap> = stdout(&o).lines().map(|l| TableMap::from_json(l).unwrap()).collect();
    assert_eq!(maps.len(), 8);
    assert!(maps.windows(2).all(|w| w[0].table() < w[1].table()));
    let klein = antiauto_core::constructions::klein_antiauto().unwrap();
    assert!(maps.contains(&klein));

    let o = run(&["enumerate", "5", "--limit", "4"]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = run(&["enumerate", "6"]);
    assert_eq!(stdout(&o), "");
}

#[test]
fn verify_reports() {
    let o = run(&["verify", "T-formula", "--max-order", "45"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 22);
    assert!(out.trim_end().ends_with("22 passed, 0 failed, 0 skipped"));

    let o = run(&["verify", "P12", "--max-order", "32", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["lines"].as_array().unwrap().iter().all(|l| l["outcome"] == "Pass"));
}

#[test]
fn parse_errors_exit_64() {
    assert_eq!(run(&["exists", "1,4"]).status.code(), Some(64));
    assert_eq!(run(&["count", "abc"]).status.code(), Some(64));
    assert_eq!(run(&["verify", "P99"]).status.code(), Some(64));
    assert_eq!(run(&["construct", "9", "--method", "bogus"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run_stdin(&["check"], "{not json").status.code(), Some(64));
}

#[test]
fn check_rejects_non_antiautomorphisms() {
    let identity = r#"{"group":"3","table":[0,1,2]}"#;
    let o = run_stdin(&["check"], identity);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("id - f is not bijective"));

    let listing = "0 -> 0\n1 -> 2\n2 -> 1\n";
    let o = run_stdin(&["check", "--group", "3"], listing);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "antiautomorphism (linear)\n");
}

#[test]
fn json_output_is_deterministic() {
    let a = run(&["exists", "4,4,3", "--format", "json"]).stdout;
    let b = run(&["exists", "4,4,3", "--format", "json"]).stdout;
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["method"], "direct-sum");
}

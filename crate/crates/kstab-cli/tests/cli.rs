//! End-to-end tests of the `kstab` binary: output shapes, exact values,
//! exit codes, and byte-level determinism.

use std::process::{Command, Output};

fn kstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn kstab_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kstab"));
    cmd.args(args);
    for (key, value) in env {
        cmd.env(key, value);
    }
    cmd.output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

/// Field of a CSV line by header position (no quoting is used in these
/// outputs).
fn field(line: &str, index: usize) -> &str {
    line.split(',').nth(index).expect("field present")
}

const BETA: usize = 8;
const CERTIFIED: usize = 10;
const PRODUCT_TYPE: usize = 12;
const VERDICT: usize = 14;

#[test]
fn beta_of_the_boundary_conic() {
    let out = kstab(&["beta", "p2:delta=1/2", "conic"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("family,boundary,divisor"));
    assert_eq!(field(lines[1], BETA), "1/3");
    assert_eq!(field(lines[1], VERDICT), "");
}

#[test]
fn beta_of_the_diagonal_vanishes_at_the_wall() {
    let out = kstab(&["beta", "p1xp1:delta=1/2", "diagonal"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let record = text.lines().nth(1).unwrap();
    assert_eq!(field(record, BETA), "0");
}

#[test]
fn toric_point_on_the_bare_plane_is_a_product_zero() {
    let out = kstab(&["beta", "p2:delta=0", "toric:2,1"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let record = text.lines().nth(1).unwrap();
    assert_eq!(field(record, BETA), "0");
    assert_eq!(field(record, PRODUCT_TYPE), "product-type");
}

#[test]
fn beta_json_document() {
    let out = kstab(&["--format", "json", "beta", "p2:delta=1/2", "conic"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["beta"]["fraction"], "1/3");
    assert_eq!(value["certified"], true);
    assert_eq!(value["divisor"], "boundary-conic");
}

#[test]
fn plane_sweep_crosses_the_wall() {
    let out = kstab(&["sweep", "plane"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    // Header plus seven coefficients times four suite divisors.
    assert_eq!(lines.len(), 29);
    for line in &lines[1..25] {
        assert_eq!(field(line, VERDICT), "consistent-with-k-polystable");
    }
    for line in &lines[25..] {
        assert_eq!(field(line, VERDICT), "not-k-polystable");
    }
}

#[test]
fn ruled_sweep_is_unstable_everywhere() {
    let out = kstab(&["sweep", "ruled:m=2"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    // Header plus 44 ample pairs times two suite divisors. The boundary
    // label contains a comma and is quoted, so check the trailing column.
    assert_eq!(lines.len(), 89);
    for line in &lines[1..] {
        assert!(line.ends_with(",not-k-semistable"), "{line}");
    }
}

#[test]
fn empty_sweep_grid_is_a_run_failure() {
    let out = kstab(&["sweep", "ruled:m=16"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("empty"));
}

#[test]
fn heuristic_threshold_needs_an_explicit_override() {
    let refused = kstab(&["beta", "p2:delta=0", "cubic-nine"]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(stderr_of(&refused).contains("not certified"));

    let allowed = kstab(&["beta", "p2:delta=0", "cubic-nine", "--allow-uncertified"]);
    assert!(allowed.status.success());
    let text = stdout_of(&allowed);
    let record = text.lines().nth(1).unwrap();
    assert_eq!(field(record, BETA), "2/5");
    assert_eq!(field(record, CERTIFIED), "false");
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        &["beta", "bogus:delta=1/2", "conic"][..],
        &["beta", "p2:delta=oops", "conic"],
        &["beta", "p2:delta=9/8", "conic"],
        &["beta", "p1xp1:delta=1/4", "conic"],
        &["beta", "p2:delta=0", "toric:2"],
        &["beta", "p2:delta=0", "nonsense"],
        &["sweep", "everything"],
        &["reproduce", "nothing"],
        &["beta", "p2:delta=1/4", "line-free-tail:4"],
    ] {
        let out = kstab(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn sweep_output_is_deterministic_and_parallel_safe() {
    let sequential = kstab(&["sweep", "twolines"]);
    let again = kstab(&["sweep", "twolines"]);
    let parallel = kstab_env(&["sweep", "twolines", "--parallel"], &[("KSTAB_WORKERS", "2")]);
    assert!(sequential.status.success());
    assert!(parallel.status.success());
    assert_eq!(sequential.stdout, again.stdout);
    assert_eq!(sequential.stdout, parallel.stdout);
}

#[test]
fn seeded_volume_samples_are_deterministic() {
    let first = kstab(&["volume", "p2", "toric:3,2", "--seed", "7"]);
    let second = kstab(&["volume", "p2", "toric:3,2", "--seed", "7"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = stdout_of(&first);
    assert!(text.contains("piece,0"));
    assert_eq!(text.lines().filter(|l| l.starts_with("sample,")).count(), 8);
    assert!(text.lines().any(|l| l.starts_with("seed,7")));

    let unseeded = kstab(&["volume", "p2", "toric:3,2"]);
    let text = stdout_of(&unseeded);
    assert_eq!(text.lines().filter(|l| l.starts_with("sample,")).count(), 0);
    assert!(!text.contains("seed,"));
}

#[test]
fn volume_json_pieces() {
    let out = kstab(&["--format", "json", "volume", "p1xp1:delta=1/2", "diagonal-contact"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["pieces"].as_array().unwrap().len(), 2);
    assert_eq!(value["vanishing_threshold"]["fraction"], "6");
    assert_eq!(value["seed"], serde_json::Value::Null);
}

#[test]
fn reproduce_all_tables_match() {
    let out = kstab(&["reproduce", "all"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.lines().count() > 1000);
    // Every comparison row carries an explicit match flag.
    for line in text.lines().skip(1) {
        assert!(line.ends_with(",true"), "row not reproduced: {line}");
    }
}

#[test]
fn output_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = kstab(&[
        "beta",
        "p2:delta=1/2",
        "conic",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("family,boundary,divisor"));
    assert!(written.contains("1/3"));
}

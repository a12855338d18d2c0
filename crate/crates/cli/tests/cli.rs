use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crystalbench"))
        .args(args)
        .env_remove("CRYSTALBENCH_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn lr_of_two_boxes_into_a_column() {
    let o = run(&["lr", "1,0", "1,0", "1,1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn lr_with_size_mismatch_prints_zero_and_exits_two() {
    let o = run(&["lr", "1,0", "1,0", "3,0", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).trim(), "0");
    assert!(stderr(&o).contains("|lambda| = 3"));
}

#[test]
fn lr_verified_against_schur_functions() {
    let o = run(&["lr", "2,1", "1,1", "2,2,1", "--n", "3", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1\n"));
    assert!(stdout(&o).contains("agree"));
}

#[test]
fn decompose_three_boxes() {
    let o = run(&["decompose", "1,0", "1,0", "1,0", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("M(3,0,0) x 1"));
    assert!(out.contains("M(2,1,0) x 2"));
    assert!(out.contains("M(1,1,1) x 1"));
}

#[test]
fn decompose_as_json_is_deterministic() {
    let a = run(&["decompose", "2,1", "1,0", "--n", "3", "--format", "json"]);
    let b = run(&["decompose", "2,1", "1,0", "--n", "3", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert!(v.is_object());
}

#[test]
fn crystal_dot_has_eight_nodes() {
    let o = run(&["crystal", "2,1", "--n", "3", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("digraph"));
    let nodes = out.lines().filter(|l| l.trim_start().starts_with('n') && l.contains("[label=") && !l.contains("->")).count();
    assert_eq!(nodes, 8);
}

#[test]
fn tau2_of_two_fundamental_elements() {
    let o = run(&["tau2", "--v1", "1", "--w1", "1", "--r1", "0", "--v2", "0", "--w2", "1", "--r2", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("r0=1 v=1"));
    assert!(out.contains("M_2("));
}

#[test]
fn tau_map_is_an_isomorphism() {
    let o = run(&["tau", "2,1", "1,0", "--n", "3", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("isomorphism: ok"));
}

#[test]
fn tau_of_a_single_pair() {
    let o = run(&["tau", "1,0", "1,0", "--n", "2", "--left", "[[1]]", "--right", "[[2]]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stdout(&o).contains("M(1,1)"));
}

#[test]
fn restrict_to_one_color_gives_strings() {
    let o = run(&["restrict", "2,1", "--n", "3", "--keep", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("4 components"));
    // String lengths 2 + 1 + 3 + 2 account for all 8 tableaux.
    let total: usize = out
        .lines()
        .filter_map(|l| l.split(" size ").nth(1))
        .map(|s| s.split(':').next().unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 8);
}

#[test]
fn restrict_rejects_bad_color() {
    let o = run(&["restrict", "2,1", "--n", "3", "--keep", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn schur_of_a_box() {
    let o = run(&["schur", "1,0", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x1 + x2"));
}

#[test]
fn hall_check_column() {
    let o = run(&["hall-check", "1,0", "1,0", "1,1", "--n", "2", "--primes", "2,3,5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn hall_check_row_is_a_projective_line() {
    let o = run(&["hall-check", "1,0", "1,0", "2,0", "--n", "2", "--primes", "2,3,5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("PASS"));
    assert!(out.contains("q + 1"));
}

#[test]
fn hall_check_with_too_few_primes_is_a_usage_error() {
    let o = run(&["hall-check", "1,0", "1,0", "2,0", "--n", "2", "--primes", "2,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("insufficient samples"));
}

#[test]
fn hall_check_rejects_non_primes() {
    let o = run(&["hall-check", "1,0", "1,0", "2,0", "--n", "2", "--primes", "2,4,5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hall_check_json_reports_counts() {
    let o = run(&["hall-check", "1,0", "1,0", "2,0", "--n", "2", "--primes", "2,3,5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
    assert_eq!(v["counts"].as_array().unwrap().len(), 3);
}

#[test]
fn mflag_check_default_primes() {
    let o = run(&["mflag-check", "1,1", "1,1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn tensor_check_two_boxes() {
    let o = run(&["tensor-check", "1,1", "1,0", "1,0", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("2q^2 + 2q"));
}

#[test]
fn orbit_check_hook() {
    let o = run(&["orbit-check", "2,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("q^4 + q^3 - q - 1"));
}

#[test]
fn jobs_flag_does_not_change_output() {
    let a = run(&["orbit-check", "2,1", "--jobs", "1"]);
    let b = run(&["orbit-check", "2,1", "--jobs", "2"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn malformed_partition_is_a_usage_error() {
    let o = run(&["lr", "1,2", "1,0", "2,1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

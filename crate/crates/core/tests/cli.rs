//! End-to-end checks of the `cremona` binary: output formats and exit codes.

use std::process::{Command, Output};

fn cremona(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cremona"))
        .args(args)
        .output()
        .expect("failed to run cremona binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn parse_echoes_canonical_form() {
    let o = cremona(&["parse", "(z1 + z0*z2^2, z0, z2)"]);
    assert!(o.status.success(), "stderr: {}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "(z0*z2^2 + z1, z0, z2)");
}

#[test]
fn parse_error_exits_2() {
    let o = cremona(&["parse", "(z0 + , z1)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error:"), "stderr: {}", stderr(&o));
}

#[test]
fn unknown_zoo_entry_exits_2() {
    let o = cremona(&["degrees", "--zoo", "no_such_map"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn degrees_csv_for_tec1() {
    let o = cremona(&[
        "degrees", "--zoo", "tec1", "--param", "d=3", "-N", "5", "--format", "csv",
    ]);
    assert!(o.status.success(), "stderr: {}", stderr(&o));
    assert_eq!(stdout(&o), "n,deg\n1,4\n2,7\n3,10\n4,13\n5,16\n");
}

#[test]
fn classify_linear_growth_json() {
    let o = cremona(&["classify", "--zoo", "p2_g", "--format", "json"]);
    assert!(o.status.success(), "stderr: {}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tag"], "Polynomial");
    assert_eq!(v["ell"], 1);
}

#[test]
fn classify_rejects_short_horizon() {
    let o = cremona(&["classify", "--zoo", "p2_g", "-N", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn stability_reports_failure_step_and_blow_down() {
    let o = cremona(&["stability", "--zoo", "p1_f", "--format", "json"]);
    assert!(o.status.success(), "stderr: {}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["stable"], false);
    assert_eq!(v["failure_step"], 2);
    assert_eq!(v["blow_down"]["point"], "(0:1:0:0)");
}

#[test]
fn blowdown_default_hyperplane() {
    let o = cremona(&["blowdown", "--zoo", "p1_f"]);
    assert!(o.status.success(), "stderr: {}", stderr(&o));
    assert!(
        stdout(&o).contains("blown down to (0:1:0:0)"),
        "stdout: {}",
        stdout(&o)
    );
}

#[test]
fn bidegree_json_for_henon() {
    let o = cremona(&["bidegree", "--zoo", "henon", "--format", "json"]);
    assert!(o.status.success(), "stderr: {}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["forward"], 2);
    assert_eq!(v["bass_inequalities"], true);
}

#[test]
fn orbit_stops_at_indeterminacy() {
    let o = cremona(&[
        "orbit", "--zoo", "p1_f", "--point=-1:0:1:0", "-N", "4",
    ]);
    assert!(o.status.success(), "stderr: {}", stderr(&o));
    assert!(
        stdout(&o).contains("hit indeterminacy"),
        "stdout: {}",
        stdout(&o)
    );
}

#[test]
fn zoo_list_names_every_entry() {
    let o = cremona(&["zoo", "list"]);
    assert!(o.status.success(), "stderr: {}", stderr(&o));
    let out = stdout(&o);
    for name in ["tec1", "tec4_g", "psi", "monomial", "p3_f"] {
        assert!(out.contains(name), "missing {name} in: {out}");
    }
}

#[test]
fn verify_paper_passes() {
    let o = cremona(&["verify-paper", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("pass"), "output: {out}");
    assert!(!out.contains("FAIL"), "output: {out}");
}

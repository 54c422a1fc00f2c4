use std::process::{Command, Output};

use matdec::decomposer::{CheckReport, Summary, Verdict};

fn matdec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matdec"))
        .args(args)
        .env_remove("MATDEC_CAP")
        .output()
        .expect("run matdec")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn lambda_of_r12_side() {
    let o = matdec(&["lambda", "R12", "--set", "1,2,5,6,9,10", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "λ = 2, exact non-minimal 3-separation");
}

#[test]
fn unknown_element_is_an_input_error() {
    let o = matdec(&["lambda", "R12", "--set", "0,99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("not in the ground set"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn bad_flag_is_a_usage_error() {
    assert_eq!(matdec(&["lambda", "R12", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        matdec(&["check", "R12", "--side", "1", "--class", "graphic"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cap_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_matdec"))
        .args(["info", "R12"])
        .env("MATDEC_CAP", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("exceeds the cap of 8"),
        "{}",
        stderr(&o)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_matdec"))
        .args(["info", "F7"])
        .env("MATDEC_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn info_json() {
    let o = matdec(&["--format", "json", "info", "Q13_sec5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["elements"], 13);
    assert_eq!(v["rank"], 7);
    assert_eq!(v["internally_four_connected"], true);
}

#[test]
fn extension_census_of_r12() {
    let o = matdec(&["extend", "R12", "--all", "--in-class", "regular"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.starts_with("51 simple extensions, 4 in the class regular, 2 isomorphism classes"),
        "{out}"
    );
    assert!(out.contains("[001100]"));
}

#[test]
fn extend_writes_a_loadable_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("y.mat");
    let p = path.to_str().unwrap();
    let o = matdec(&["extend", "X", "--vector", "11000", "--output", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = matdec(&["iso", p, "Y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("isomorphic"));
}

#[test]
fn non_standard_file_needs_standardize() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.mat");
    std::fs::write(
        &path,
        "matroid T\nrank 2\nelements 3\nfield 2\n0 1 1\n1 0 1\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = matdec(&["info", p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("identity"), "{}", stderr(&o));
    assert_eq!(matdec(&["--standardize", "info", p]).status.code(), Some(0));
}

#[test]
fn minor_and_iso_exit_codes() {
    let o = matdec(&["minor", "R12", "--target", "F7"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(1), "none"));
    let o = matdec(&["minor", "F7dual", "--target", "F7dual"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(matdec(&["iso", "F7", "F7dual"]).status.code(), Some(1));
}

#[test]
fn counterexample_check_fails_on_z() {
    let o = matdec(&[
        "check",
        "X",
        "--side",
        "1,2,5,6,7,10",
        "--k",
        "3",
        "--class",
        "all-binary",
        "--witnesses",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("verdict: NotCertified"));
    assert!(
        out.contains("(iii)(d) growth column [11000] row [110011]"),
        "{out}"
    );
}

#[test]
fn fast_path_reports_unmet_preconditions() {
    let o = matdec(&["check", "W4", "--side", "1,2,5,6", "--method", "fast-path"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("precondition"));
    let o = matdec(&[
        "check",
        "R12",
        "--side",
        "3,4,7,8,11,12",
        "--method",
        "nope",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reproduce_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.md");
    let o = matdec(&[
        "reproduce",
        "counterexample",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = std::fs::read_to_string(&path).unwrap();
    assert!(doc.contains("| λ_Z(A ∪ {6, 12}) | 2 | 2 | yes |"));
    assert_eq!(matdec(&["reproduce", "tables"]).status.code(), Some(2));
}

#[test]
fn reproduce_is_deterministic_across_job_counts() {
    let a = matdec(&["reproduce", "r12"]);
    let b = matdec(&["--jobs", "3", "reproduce", "r12"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn methods_listed() {
    let out = stdout(&matdec(&["methods"]));
    for m in ["connectivity", "circuit-oracle", "fast-path"] {
        assert!(out.contains(m));
    }
}

#[test]
fn r12_is_certified() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r12.json");
    let o = matdec(&[
        "check",
        "R12",
        "--side",
        "3,4,7,8,11,12",
        "--k",
        "3",
        "--class",
        "regular",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict: Certified"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["summary"]["verdict"], "Certified");
    let typed: CheckReport = serde_json::from_value(report.clone()).unwrap();
    assert_eq!(serde_json::to_value(&typed).unwrap(), report);
}

#[test]
fn check_json_round_trips() {
    let o = matdec(&[
        "--format",
        "json",
        "check",
        "X",
        "--side",
        "1,2,5,6,7,10",
        "--class",
        "all-binary",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let verdict: Verdict = serde_json::from_value(v["verdict"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&verdict).unwrap(), v["verdict"]);
    let summary: Summary = serde_json::from_value(v["summary"].clone()).unwrap();
    assert_eq!(summary.verdict, "NotCertified");
}

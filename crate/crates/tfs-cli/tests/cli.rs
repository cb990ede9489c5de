//! End-to-end tests driving the compiled `tfs` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_tfs")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(bin());
    c.args(args);
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const REC1: &str = r#"{"P":[[0,0,"5"]],"Q1":[[0,"1"],[1,"-2"]],"Q2":[[0,"1"],[1,"-3"]]}"#;
const T2: &str = r#"{"P":[[0,1,"1"]]}"#;

#[test]
fn coeff_prints_exact_value() {
    let dir = tempfile::tempdir().unwrap();
    let series = write(dir.path(), "rec1.json", REC1);
    let out = run(&["coeff", "--series", series.to_str().unwrap(), "--l", "1", "--g", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "30\n");
}

#[test]
fn eval_closed_expressions() {
    let dir = tempfile::tempdir().unwrap();
    let series = write(dir.path(), "rec1.json", REC1);
    let out = run(&["eval", "--series", series.to_str().unwrap(), "--expr", "iota ; eps"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "5\n");

    // one expression per line, comments and blanks skipped
    let words = write(dir.path(), "words.txt", "iota ; eps\n# comment\n\niota ; b1 ; eps\n");
    let out = run(&["eval", "--series", series.to_str().unwrap(), "--file", words.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "5\n10\n");
}

#[test]
fn eval_rejects_open_expressions() {
    let dir = tempfile::tempdir().unwrap();
    let series = write(dir.path(), "rec1.json", REC1);
    let out = run(&["eval", "--series", series.to_str().unwrap(), "--expr", "iota"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("closed"));
}

#[test]
fn expression_errors_carry_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let series = write(dir.path(), "rec1.json", REC1);
    let out = run(&["eval", "--series", series.to_str().unwrap(), "--expr", "iota ; frob"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("1:8"), "missing position in {err:?}");

    let out = run(&["trace", "--series", series.to_str().unwrap(), "--expr", "iota ; mu"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("arity"));
}

#[test]
fn trace_matches_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let series = write(dir.path(), "rec1.json", REC1);
    let out = run(&["trace", "--series", series.to_str().unwrap(), "--expr", "b1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "20\n"); // 5 * 2^2
}

#[test]
fn compose_emits_canonical_forms() {
    let out = run(&["compose", "--expr", "delta ; perm ; mu", "--format", "tsv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1→1 [g0 h0 (B1)][g0 h0 (T1)]\n");

    let out = run(&["compose", "--expr", "delta ; mu"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 1);
    assert_eq!(v["m"], 1);
    assert_eq!(v["viewable"][0]["holes"], 1);
    assert_eq!(v["text"], "1→1 [g0 h1 (B1 T1)]");
}

#[test]
fn syntactic_reports_the_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let series = write(dir.path(), "t2.json", T2);
    let out = run(&["syntactic", "--series", series.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["d"], 2);
    assert_eq!(v["basis"], serde_json::json!([[0, 0], [0, 1]]));
    assert_eq!(v["q2"], serde_json::json!(["0", "0", "1"]));
}

#[test]
fn fit_finds_rational_forms_and_reports_null() {
    let dir = tempfile::tempdir().unwrap();
    // 5 * 2^l * 3^g
    let rows: Vec<Vec<String>> = (0..4)
        .map(|l| (0..4).map(|g| (5i64 * 2i64.pow(l) * 3i64.pow(g)).to_string()).collect())
        .collect();
    let table = serde_json::json!({"L": 3, "G": 3, "rows": rows});
    let tpath = write(dir.path(), "table.json", &table.to_string());
    let out = run(&["fit", "--table", tpath.to_str().unwrap(), "--bounds", "1,1,0,0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["P"], serde_json::json!([[0, 0, "5"]]));
    assert_eq!(v["Q1"], serde_json::json!([[0, "1"], [1, "-2"]]));
    assert_eq!(v["Q2"], serde_json::json!([[0, "1"], [1, "-3"]]));

    // factorials satisfy no fixed-degree recurrence
    let rows: Vec<Vec<String>> = (0..4u64)
        .map(|l| {
            (0..4u64).map(|g| (1..=(l + g)).product::<u64>().max(1).to_string()).collect()
        })
        .collect();
    let table = serde_json::json!({"L": 3, "G": 3, "rows": rows});
    let tpath = write(dir.path(), "fact.json", &table.to_string());
    let out = run(&["fit", "--table", tpath.to_str().unwrap(), "--bounds", "1,1,0,0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "null");

    // a table too small for the requested bounds is a hard error
    let out = run(&["fit", "--table", tpath.to_str().unwrap(), "--bounds", "3,3,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("too small"));
}

#[test]
fn basis_lists_minimal_forms() {
    let out = run(&["basis", "--n", "1", "--m", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 3);
    assert_eq!(v["skein_dim"], serde_json::Value::Null);
    assert_eq!(v["elements"].as_array().unwrap().len(), 3);

    let dir = tempfile::tempdir().unwrap();
    let series = write(dir.path(), "t2.json", T2);
    let out = run(&["basis", "--n", "1", "--m", "1", "--series", series.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["skein_dim"], 8);

    let out = run(&["basis", "--n", "1", "--m", "1", "--format", "tsv"]);
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn cap_flag_overrides_environment() {
    let out = run_env(&["basis", "--n", "2", "--m", "2"], &[("TFS_CAP", "3")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cap 3"));

    let out = run_env(&["basis", "--n", "2", "--m", "2", "--cap", "4"], &[("TFS_CAP", "3")]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 73);
}

#[test]
fn dims_reports_both_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let series = write(dir.path(), "t2.json", T2);
    let out = run(&[
        "dims", "--series", series.to_str().unwrap(), "--max-n", "1", "--format", "tsv",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n\tskein_dim\tstate_dim\n0\t1\t1\n1\t2\t2\n");

    let out = run(&[
        "dims", "--series", series.to_str().unwrap(), "--max-n", "1", "--path", "skein",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"][1]["state_dim"], 2);
}

#[test]
fn reduce_emits_skein_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let series = write(dir.path(), "rec1.json", REC1);
    let out = run(&["reduce", "--series", series.to_str().unwrap(), "--expr", "iota ; b1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 0);
    assert_eq!(v["m"], 1);
    assert_eq!(v["terms"][0]["coeff"], "2");
    assert_eq!(v["terms"][0]["decoration"], serde_json::json!([[0, 0]]));
}

#[test]
fn hilbert_classifies_points() {
    let dir = tempfile::tempdir().unwrap();
    let point = write(
        dir.path(),
        "p.json",
        r#"{"k":2,"basis":[[0,0],[0,1]],"N1":[["0","0"],["0","0"]],"N2":[["0","0"],["1","0"]],"a":["0","1"]}"#,
    );
    let out = run(&["hilbert", "--point", point.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["k"], 2);
    assert_eq!(v["m"], 2);
    assert_eq!(v["in_Dk"], false);
    assert_eq!(v["det"], "-1");
    assert_eq!(v["series"]["P"], serde_json::json!([[0, 1, "1"]]));

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"k":2,"basis":[[0,0],[1,0]],"N1":[["0","0"],["1","0"]],"N2":[["0","1"],["0","0"]],"a":["1","1"]}"#,
    );
    let out = run(&["hilbert", "--point", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("commut"));
}

#[test]
fn beta_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let alpha = write(dir.path(), "alpha.json", REC1);
    let gamma = write(dir.path(), "gamma.json", r#"{"P":[[0,0,"1"]],"Q2":[[0,"1"],[1,"-7"]]}"#);
    let out = run(&["beta", "pack", "--alpha", alpha.to_str().unwrap(), "--gamma", gamma.to_str().unwrap()]);
    assert!(out.status.success());
    let packed = stdout(&out);
    let ppath = write(dir.path(), "packed.json", &packed);
    let out = run(&["beta", "unpack", "--beta", ppath.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // the first-layer series evaluates like the original alpha
    let back = write(dir.path(), "alpha2.json", &v["alpha"].to_string());
    let a = run(&["coeff", "--series", back.to_str().unwrap(), "--l", "2", "--g", "2"]);
    assert_eq!(stdout(&a), "180\n"); // 5 * 4 * 9

    // packing rejects a second layer that involves the first variable
    let out = run(&["beta", "pack", "--alpha", alpha.to_str().unwrap(), "--gamma", alpha.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let series = write(dir.path(), "t2.json", T2);
    let args: Vec<Vec<&str>> = vec![
        vec!["syntactic", "--series", series.to_str().unwrap()],
        vec!["basis", "--n", "1", "--m", "2"],
        vec!["dims", "--series", series.to_str().unwrap(), "--max-n", "2", "--format", "tsv"],
        vec!["reduce", "--series", series.to_str().unwrap(), "--expr", "iota @ iota ; mu ; b2"],
    ];
    for argv in args {
        let first = run(&argv);
        let second = run(&argv);
        assert!(first.status.success(), "{argv:?}");
        assert_eq!(first.stdout, second.stdout, "{argv:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["coeff"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["fit", "--table", "x.json", "--bounds", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

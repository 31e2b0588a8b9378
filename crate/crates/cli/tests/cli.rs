use std::process::{Command, Output};

use qmock_core::verify::{Status, SuiteReport};

fn qmock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmock")).args(args).output().expect("qmock runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn verify_single_identity_emits_a_report() {
    let o = qmock(&["verify", "--identity", "c6", "--order", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: SuiteReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.order, 200);
    assert_eq!(report.results.len(), 1);
    assert_eq!(report.results[0].status, Status::Pass);
    assert!(report.results[0].first_mismatch.is_none());
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", stdout(&o));
}

#[test]
fn coefficient_table_as_csv() {
    let o = qmock(&["coeffs", "--function", "f", "--upto", "10", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 11);
    assert_eq!(&lines[..3], ["0,1", "1,1", "2,-2"]);
}

#[test]
fn coefficient_table_as_json() {
    let o = qmock(&["coeffs", "--function", "omega", "--upto", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cs: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["c"].as_str().unwrap()).collect();
    assert_eq!(cs, ["1", "2", "3", "4", "6"]);
}

#[test]
fn usage_errors_exit_with_two_and_one_line() {
    for args in [
        &["verify", "--identity", "nope"][..],
        &["verify", "--identity", "idt5", "--params", "l=3,j=0"],
        &["verify", "--identity", "idt5", "--params", "l"],
        &["verify", "--order", "10"],
        &["coeffs", "--function", "g", "--upto", "3"],
        &["recursion", "--theorem", "t0", "--upto", "3"],
        &["frobnicate"],
    ] {
        let o = qmock(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert_eq!(stderr(&o).lines().count(), 1, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn unsafe_params_skip_the_instance_list() {
    let o = qmock(&["verify", "--identity", "idt5", "--params", "l=2,j=-1", "--unsafe-params", "--order", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: SuiteReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.results[0].params["l"], "2");
}

#[test]
fn degenerate_parameters_exit_with_two() {
    let o = qmock(&["verify", "--identity", "last11", "--params", "b1=1", "--unsafe-params", "--order", "20"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stderr(&o).starts_with("qmock: degenerate"), "{}", stderr(&o));
}

#[test]
fn recursion_table() {
    let o = qmock(&["recursion", "--theorem", "t1id", "--upto", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("1,-2/3,-2/3,ok"));
}

#[test]
fn list_shows_every_entry() {
    let o = qmock(&["list"]);
    let text = stdout(&o);
    for name in ["c6", "idt5", "gls", "r-identity", "waston"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn table_format_and_timings() {
    let o = qmock(&["verify", "--identity", "qtp1", "--order", "30", "--format", "table"]);
    assert!(stdout(&o).contains("qtp1"));
    assert!(stdout(&o).ends_with("1/1 passed\n"));
    let o = qmock(&["verify", "--identity", "qtp1", "--order", "30", "--timings"]);
    assert!(stdout(&o).contains("elapsedMs"));
    let o = qmock(&["verify", "--identity", "qtp1", "--order", "30"]);
    assert!(!stdout(&o).contains("elapsedMs"));
}

#[test]
fn bench_reports_totals() {
    let o = qmock(&["bench", "--order", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().starts_with("total "));
}

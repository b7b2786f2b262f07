//! End-to-end runs of the installed binary: exit codes, output shapes,
//! and the examples the help text leans on.

use std::process::{Command, Output};

fn nopq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nopq"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

#[test]
fn classify_names_the_type_in_both_alphabets() {
    let out = nopq(&["classify", "{1,11}"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "Q (∞)\n");
}

#[test]
fn solve_prints_a_witness_when_one_exists() {
    let out = nopq(&["solve", "Q+Q=O"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    let witness = lines.next().expect("a witness line");
    assert!(witness.contains(" + "), "no addends in {witness:?}");
    assert_eq!(lines.next(), Some("Q (∞) + Q (∞) = O (2)"));
}

#[test]
fn solve_reports_unsolvable_equations_with_exit_one() {
    let out = nopq(&["solve", "O+O=O"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("no solution in scanned universe"));
}

#[test]
fn reduce_names_the_reduced_form() {
    let out = nopq(&["reduce", "1,1,2,5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "22, type Q (∞)\n");
}

#[test]
fn parse_errors_exit_two_and_point_at_the_byte() {
    let out = nopq(&["classify", "{1,?}"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        stderr(&out),
        "syntax error at byte 3: unexpected character '?'\n"
    );
    assert_eq!(stdout(&out), "");
}

#[test]
fn unknown_flags_exit_two() {
    let out = nopq(&["classify", "--frobnicate", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_wraps_command_and_result() {
    let out = nopq(&["classify", "12", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON on stdout");
    assert_eq!(doc["command"], "classify");
    assert_eq!(doc["result"]["type"], "Q");
    assert_eq!(doc["result"]["numeral"], "∞");
}

#[test]
fn the_subtraction_table_keeps_the_traditional_layout() {
    let out = nopq(&["table", "subtraction"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = concat!(
        " - | 0    1    2    ∞\n",
        "---+---------------------\n",
        " 3 | 3    2    1    none\n",
        " 2 | 2    1    0∞   2∞\n",
        " 1 | 1    All  12∞  12\n",
        " ∞ | All  All  All  All\n",
    );
    assert_eq!(stdout(&out), expected);
}

#[test]
fn thread_count_leaves_output_alone() {
    let one = nopq(&["scan-forbidden", "--threads", "1"]);
    let three = nopq(&["scan-forbidden", "--threads", "3"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&three));
}

#[test]
fn enumerate_rejects_days_it_cannot_reach() {
    let out = nopq(&["enumerate", "--day", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("day 5"));
}

#[test]
fn near_inf_rejects_unknown_types() {
    let out = nopq(&["near-inf", "--type", "X"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sum_folds_all_addends() {
    let out = nopq(&["sum", "1", "1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("type = P (0)"), "unexpected output: {text}");
}

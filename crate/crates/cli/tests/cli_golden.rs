//! Byte-frozen golden files and exit-code contract for the binary.
//! Exit codes: 0 success, 1 bad input, 2 structured mathematical negative.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riordan"))
        .args(args)
        .env_remove("RIORDAN_ORDER")
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], order: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riordan"))
        .args(args)
        .env("RIORDAN_ORDER", order)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn eval_pascal_text_golden() {
    let output = run(&["eval", "--g", "1/(1-t)", "--f", "t/(1-t)", "--rows", "5", "--format", "text"]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        stdout(&output),
        "1 0 0 0 0\n1 1 0 0 0\n1 2 1 0 0\n1 3 3 1 0\n1 4 6 4 1\n"
    );
}

#[test]
fn eval_pascal_csv_golden() {
    let output = run(&["eval", "--g", "1/(1-t)", "--f", "t/(1-t)", "--rows", "5", "--format", "csv"]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        stdout(&output),
        "1,0,0,0,0\n1,1,0,0,0\n1,2,1,0,0\n1,3,3,1,0\n1,4,6,4,1\n"
    );
}

#[test]
fn eval_pascal_json_golden() {
    let output = run(&["eval", "--g", "1/(1-t)", "--f", "t/(1-t)", "--rows", "3", "--format", "json"]);
    assert_eq!(code(&output), 0);
    let expected = concat!(
        "{\n",
        "  \"command\": \"eval\",\n",
        "  \"f\": \"t/(1-t)\",\n",
        "  \"g\": \"1/(1-t)\",\n",
        "  \"matrix\": [\n",
        "    [\n      \"1\",\n      \"0\",\n      \"0\"\n    ],\n",
        "    [\n      \"1\",\n      \"1\",\n      \"0\"\n    ],\n",
        "    [\n      \"1\",\n      \"2\",\n      \"1\"\n    ]\n",
        "  ],\n",
        "  \"order\": 16,\n",
        "  \"rows\": 3\n",
        "}\n",
    );
    assert_eq!(stdout(&output), expected);
}

#[test]
fn json_is_the_default_when_piped() {
    let output = run(&["eval", "--g", "1", "--f", "t", "--rows", "2"]);
    assert_eq!(code(&output), 0);
    assert!(stdout(&output).starts_with("{\n"));
}

#[test]
fn aligned_text_pads_multidigit_columns() {
    let output = run(&["mul", "--a-g", "1/(1-t)", "--a-f", "t/(1-t)", "--b-g", "1/(1-t)",
        "--b-f", "t/(1-t)", "--order", "4", "--rows", "4", "--format", "text"]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        stdout(&output),
        "g: 1 + 2*t + 4*t^2 + 8*t^3 + 16*t^4\nf: t + 2*t^2 + 4*t^3 + 8*t^4\n\
         1  0 0 0\n2  1 0 0\n4  4 1 0\n8 12 6 1\n"
    );
}

#[test]
fn normal_form_csv_golden() {
    let output = run(&["normal-form", "--p", "2", "--lambda", "1", "--order", "9", "--format", "csv"]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "series,0,-1,0,1/2,0,-3/8,0,5/16,0,-35/128\n");
}

#[test]
fn check_false_is_exit_two_with_structured_output() {
    let output = run(&["check", "involution", "--g", "1/(1-t)", "--f", "t/(1-t)", "--format", "csv"]);
    assert_eq!(code(&output), 2);
    assert_eq!(stdout(&output), "check,involution,false\n");

    let output = run(&["check", "involution", "--g", "1", "--f", "-t", "--format", "csv"]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "check,involution,true\n");
}

#[test]
fn check_subgroup_reports_tag() {
    let output = run(&["check", "subgroup", "--tag", "bell", "--g", "1/(1-t)", "--f", "t/(1-t)", "--format", "json"]);
    assert_eq!(code(&output), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["kind"], "subgroup");
    assert_eq!(value["tag"], "bell");
    assert_eq!(value["result"], true);
}

#[test]
fn classify_involution_reports_verified_witness() {
    let output = run(&["classify-involution", "--g", "1/(1-t)", "--f", "-t/(1-t)", "--format", "json"]);
    assert_eq!(code(&output), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["class"], "conjugate-to-m");
    assert_eq!(value["sign"], "+1");
    assert_eq!(value["verified"], true);
    assert_eq!(value["target"]["g"][0], "1");
    assert_eq!(value["target"]["f"][1], "-1");
}

#[test]
fn classify_non_involution_is_exit_two() {
    let output = run(&["classify-involution", "--g", "1/(1-t)", "--f", "t/(1-t)", "--format", "json"]);
    assert_eq!(code(&output), 2);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["class"], "not-involution");
}

#[test]
fn subgroup_conjugator_infeasibility_is_exit_two() {
    let output = run(&["subgroup-conjugator", "--tag", "derivative", "--g", "-1/(1+t)^2",
        "--f", "-t/(1+t)", "--order", "8", "--format", "json"]);
    assert_eq!(code(&output), 2);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["status"], "infeasible-in-subgroup");
    assert_eq!(value["certificate"]["degree"], 1);
    assert_eq!(value["outside_witness"]["verified"], true);
}

#[test]
fn subgroup_conjugator_found_verifies() {
    let output = run(&["subgroup-conjugator", "--tag", "hitting-time", "--g", "1/(1+t)",
        "--f", "-t/(1+t)", "--order", "8", "--format", "json"]);
    assert_eq!(code(&output), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["status"], "found");
    assert_eq!(value["verified"], true);
}

#[test]
fn witness_two_involutions_verifies() {
    let output = run(&["witness", "two-involutions", "--a-g", "1", "--a-f", "-t",
        "--b-g", "1/(1-t)", "--b-f", "-t/(1-t)", "--format", "json"]);
    assert_eq!(code(&output), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["sign"], "+1");
    assert_eq!(value["verified"], true);
}

#[test]
fn reversible_obstruction_is_exit_two() {
    let output = run(&["reversible", "--f", "2*t", "--format", "json"]);
    assert_eq!(code(&output), 2);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["verdict"], "multiplier-obstruction");

    let output = run(&["reversible", "--f", "-t/root(2,1+t^2)", "--format", "json"]);
    assert_eq!(code(&output), 2);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["verdict"], "obstructed-at-degree");
    assert_eq!(value["degree"], 3);
}

#[test]
fn reversible_witness_verifies() {
    let output = run(&["reversible", "--f", "t/(1-t)", "--format", "json"]);
    assert_eq!(code(&output), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["verdict"], "reversible");
    assert_eq!(value["verified"], true);
    assert_eq!(value["witness"][1], "-1");
}

#[test]
fn decompose_pascal_yields_the_frozen_factors() {
    let output = run(&["decompose", "--g", "1/(1-t)", "--f", "t/(1-t)", "--order", "4", "--format", "csv"]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        stdout(&output),
        "left-g,1,1,1,1,1\nleft-f,0,-1,-1,-1,-1\nright-g,1,0,0,0,0\nright-f,0,-1,0,0,0\nverified,true\n"
    );
}

#[test]
fn decompose_without_pseudo_involution_is_exit_two() {
    let output = run(&["decompose", "--g", "1+t", "--f", "t", "--format", "json"]);
    assert_eq!(code(&output), 2);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["error"], "not-pseudo-involution-under-witness");
}

#[test]
fn parse_errors_are_exit_one_with_offsets() {
    let output = run(&["eval", "--g", "1/(1-", "--f", "t"]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("offset"));
    assert!(stdout(&output).is_empty());

    let output = run(&["eval", "--g", "1/(0)", "--f", "t"]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("offsets 0..5"));
}

#[test]
fn precondition_violations_are_exit_one() {
    // f without a zero constant term is not a composition series
    let output = run(&["eval", "--g", "1", "--f", "1+t"]);
    assert_eq!(code(&output), 1);

    // non-member input to the subgroup conjugator
    let output = run(&["subgroup-conjugator", "--tag", "bell", "--g", "1", "--f", "-t"]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("not a member"));

    // a matrix wider than the truncation order can support
    let output = run(&["eval", "--g", "1", "--f", "t", "--order", "3", "--rows", "8"]);
    assert_eq!(code(&output), 1);

    // half-supplied decomposition witness
    let output = run(&["decompose", "--g", "1", "--f", "t", "--u-g", "1"]);
    assert_eq!(code(&output), 1);
}

#[test]
fn argument_errors_and_help() {
    let output = run(&["no-such-command"]);
    assert_eq!(code(&output), 1);

    let output = run(&["--help"]);
    assert_eq!(code(&output), 0);
    assert!(stdout(&output).contains("root(k,u)"));

    let output = run(&["--version"]);
    assert_eq!(code(&output), 0);
}

#[test]
fn env_var_sets_the_default_order() {
    let output = run_env(&["inv", "--g", "1/(1-t)", "--f", "t/(1-t)", "--format", "csv"], "4");
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "g,1,-1,1,-1,1\nf,0,1,-1,1,-1\n");

    // explicit flag wins over the environment
    let output = run_env(
        &["inv", "--g", "1/(1-t)", "--f", "t/(1-t)", "--order", "2", "--format", "csv"],
        "4",
    );
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "g,1,-1,1\nf,0,1,-1\n");

    let output = run_env(&["inv", "--g", "1", "--f", "t"], "not-a-number");
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("RIORDAN_ORDER"));
}

//! End-to-end tests of the `cantor` binary: output values, formats,
//! exit codes, and byte-level determinism.

use std::process::{Command, Output};
use std::str::FromStr;

fn cantor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cantor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cantor(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn moments_solus_prints_known_value() {
    let out = stdout(&[
        "moments", "--kind", "solus", "--theta", "1/3", "--n", "2", "--digits", "6",
    ]);
    assert!(out.contains("mu[1],21/19-9/19*phi,0.338826"), "{out}");
    assert!(out.starts_with("index,exact,decimal,error_bound"));
}

#[test]
fn constants_cantor_min() {
    let out = stdout(&["constants", "--name", "cantor-min", "--digits", "10"]);
    assert!(out.contains("1.9967049717"), "{out}");
}

#[test]
fn json_output_is_well_formed() {
    let out = stdout(&[
        "order-stats", "--kind", "unconstrained", "--n", "5", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "order-stats");
    let rows = v["rows"].as_array().unwrap();
    // ξ_5 = 5/46 at the default θ = 1/3
    assert!(rows
        .iter()
        .any(|r| r["index"] == "xi[5]" && r["exact"] == "5/46"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "sample", "--kind", "multus", "--m", "16", "--count", "5", "--seed", "99",
    ];
    assert_eq!(stdout(&args), stdout(&args));
    let mc = [
        "order-stats",
        "--kind",
        "solus",
        "--monte-carlo",
        "--n",
        "2",
        "--samples",
        "2000",
        "--seed",
        "5",
    ];
    assert_eq!(stdout(&mc), stdout(&mc));
}

#[test]
fn jobs_do_not_change_monte_carlo_output() {
    let base = [
        "order-stats",
        "--kind",
        "unconstrained",
        "--monte-carlo",
        "--n",
        "3",
        "--samples",
        "4000",
        "--seed",
        "11",
    ];
    let mut one = base.to_vec();
    one.extend(["--jobs", "1"]);
    let mut four = base.to_vec();
    four.extend(["--jobs", "4"]);
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn exact_strings_round_trip() {
    let out = stdout(&["bitsums", "--kind", "multus", "--density"]);
    for line in out.lines().skip(1) {
        let exact = line.split(',').nth(1).unwrap();
        let parsed = cantor::ExactValue::from_str(exact).unwrap();
        assert_eq!(parsed.to_string(), exact);
    }
    let out = stdout(&["enumerate", "--kind", "solus", "--m", "3"]);
    assert_eq!(out.lines().count(), 1 + 5); // header + f_5 = 5 strings
}

#[test]
fn exit_codes() {
    // malformed theta: usage error
    let out = cantor(&["moments", "--theta", "0.3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cantor(&["moments", "--theta", "7/8"]);
    assert_eq!(out.status.code(), Some(2));
    // unsupported (kind, bit) pair
    let out = cantor(&["runs", "--kind", "solus", "--bit", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // infeasible-size guard
    let out = cantor(&["enumerate", "--kind", "unconstrained", "--m", "64"]);
    assert_eq!(out.status.code(), Some(3));
    // unknown subcommand: clap usage error
    let out = cantor(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // multus order stats need --monte-carlo
    let out = cantor(&["order-stats", "--kind", "multus", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suite_passes() {
    let out = cantor(&["verify", "--suite", "oracle", "--max-len", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.contains(",1,pass,")), "{text}");
}

#[test]
fn fib_word_density() {
    let out = stdout(&["fib-word", "--n", "10000", "--digits", "6"]);
    let row = out.lines().nth(1).unwrap();
    assert!(row.starts_with("density:0100101001001"), "{row}");
    assert!(row.contains(",0.38"), "{row}");
}

#[test]
fn runs_numerators_match_displayed_series() {
    let out = stdout(&["runs", "--kind", "multus", "--bit", "0", "--n", "5"]);
    for want in ["num[1],1,", "num[2],2,", "num[3],5,", "num[4],11,", "num[5],23,"] {
        assert!(out.contains(want), "missing {want} in {out}");
    }
}

use std::process::Command;

use jetvir::charges::ChargeSet;
use jetvir::cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use jetvir::rational::rat;

fn jetvir(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("jetvir").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn row<'a>(text: &'a str, name: &str) -> Vec<&'a str> {
    text.lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .find(|cols| cols.first() == Some(&name))
        .unwrap_or_else(|| panic!("no row {name} in\n{text}"))
}

const BASE: &[&str] = &[
    "charges", "--d", "1", "--p", "0", "--lambda", "0", "--kappa", "0", "--delta-rho", "1", "--y-rho", "0", "--delta-m",
    "1", "--y-m", "1",
];

#[test]
fn charges_table_and_statistics_flip() {
    let mut args = BASE.to_vec();
    args.extend(["--statistics", "bose"]);
    let (code, out, _) = jetvir(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(row(&out, "c5")[1], "-1");

    let mut args = BASE.to_vec();
    args.extend(["--statistics", "fermi"]);
    let (_, out, _) = jetvir(&args);
    assert_eq!(row(&out, "c5")[1], "1");
}

#[test]
fn json_round_trips() {
    let (code, out, _) = jetvir(&[
        "charges", "--d", "1", "--p", "0", "--lambda", "1/2", "--y-m", "1", "--z-m", "-2/3", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let set = ChargeSet::from_json(&out).unwrap();
    assert_eq!(set.inputs.d, 1);
    assert_eq!(set.charges.c5, rat(-1));
    assert!(out.contains("\"c5\": \"-1/1\""));
    assert_eq!(ChargeSet::from_json(&set.to_json()).unwrap(), set);
}

#[test]
fn measured_comparison_matches() {
    for extra in [
        vec!["--d", "2", "--p", "2", "--kappa", "1/3", "--y-rho", "2", "--z-m", "1", "--w-m", "-1", "--lambda", "2"],
        vec!["--d", "1", "--p", "3", "--k0", "1", "--k1", "2", "--k2", "-1/2", "--statistics", "fermi"],
    ] {
        let mut args = vec!["charges", "--measure", "--format", "json"];
        args.extend(extra);
        let (code, out, err) = jetvir(&args);
        assert_eq!(code, EXIT_OK, "{err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["all_match"], serde_json::Value::Bool(true));
        ChargeSet::from_json(&out).unwrap();
    }
    let (_, out, _) = jetvir(&["charges", "--d", "2", "--p", "1", "--measure", "--format", "csv"]);
    assert!(out.starts_with("charge,closed,measured,match\n"));
    assert!(out.lines().skip(1).all(|l| l.ends_with(",yes")));
}

#[test]
fn sums_table() {
    let (code, out, _) = jetvir(&["sums", "--d", "2", "--p", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(row(&out, "E[0,1]")[1..], ["5", "5"]);
    assert_eq!(row(&out, "A")[1..], ["6", "6"]);
}

#[test]
fn cocycle_values() {
    let (code, out, _) = jetvir(&[
        "cocycle", "--kind", "virasoro", "--d", "1", "--xi", "x^3", "--eta", "x^-1", "--traj", "z", "--c1", "1", "--c2", "1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "12");
    let (_, out, _) = jetvir(&[
        "cocycle", "--kind", "virasoro", "--d", "1", "--xi", "x^2", "--eta", "x", "--traj", "0", "--c1", "1", "--c2", "1",
    ]);
    assert_eq!(out.trim(), "0");
    let (_, out, _) = jetvir(&["cocycle", "--kind", "affine", "--x", "x", "--y", "x^-1", "--traj", "z", "--c5", "5/2"]);
    assert_eq!(out.trim(), "5/2");
    let (_, out, _) = jetvir(&["cocycle", "--kind", "reparam-tt", "--f", "z^3", "--g", "z^-1", "--c4", "12"]);
    assert_eq!(out.trim(), "6");
}

#[test]
fn usage_and_parse_errors() {
    let (code, _, err) = jetvir(&["cocycle", "--kind", "virasoro", "--xi", "x^(", "--eta", "x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("column 3"), "{err}");
    let (code, _, err) = jetvir(&["cocycle", "--kind", "affine", "--x", "x^-1", "--y", "x", "--traj", "1 + z", "--c5", "1"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
    assert_eq!(jetvir(&["charges", "--d", "7", "--p", "0"]).0, EXIT_USAGE);
    assert_eq!(jetvir(&["charges", "--d", "1", "--p", "0", "--k0", "1"]).0, EXIT_USAGE);
    assert_eq!(jetvir(&["charges", "--d", "1", "--p", "0", "--lambda", "1/0"]).0, EXIT_USAGE);
    assert_eq!(jetvir(&["nonsense"]).0, EXIT_USAGE);
    let (code, out, _) = jetvir(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify"));
}

#[test]
fn small_verify_is_deterministic() {
    let args = ["verify", "--d-max", "1", "--p-max", "0"];
    let (code, first, _) = jetvir(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(jetvir(&args).1, first);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_jetvir");
    let status = |args: &[&str]| Command::new(bin).args(args).status().unwrap().code();
    assert_eq!(status(&["verify", "--d-max", "2", "--p-max", "2", "--self-test-fault"]), Some(EXIT_FAILURE));
    assert_eq!(status(&["sums", "--d", "3", "--p", "4"]), Some(EXIT_OK));
    assert_eq!(status(&["sums", "--d", "0", "--p", "4"]), Some(EXIT_USAGE));
}

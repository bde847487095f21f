use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

use cauchy_core::cli::{run_args, Outcome, EXIT_INPUT, EXIT_PASS};

const SPEC_12_35: &str = r#"{"xs":["1","2"],"ys":["3","5"]}"#;

fn cli(args: &[&str]) -> Outcome {
    run_args(std::iter::once("cauchy").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", out.stdout))
}

#[test]
fn invsum_example() {
    let out = cli(&["invsum", "--spec", SPEC_12_35]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    let r = json(&out);
    assert_eq!(r["identity"], "theorem1_inverse_entry_sum");
    assert_eq!(r["lhs"], "11");
    assert_eq!(r["rhs"], "11");
    assert_eq!(r["pass"], true);
    assert_eq!(r["spec"]["xs"], serde_json::json!(["1", "2"]));
}

#[test]
fn min_det_zero_factor() {
    let out = cli(&["min-det", "--spec", r#"{"kind":"min","xs":["1","2"],"ys":["3","4"]}"#]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    let r = json(&out);
    assert_eq!((r["lhs"].as_str(), r["rhs"].as_str(), r["pass"].as_bool()), (Some("0"), Some("0"), Some(true)));
}

#[test]
fn min_anchor_spec() {
    let spec = r#"{"kind":"min","xs":["1","3"],"ys":["2","4"]}"#;
    assert_eq!(json(&cli(&["min-det", "--spec", spec]))["lhs"], "1");
    assert_eq!(json(&cli(&["min-invsum", "--spec", spec]))["lhs"], "1");
    let cols = cli(&["min-colsums", "--spec", spec]);
    assert_eq!(cols.code, EXIT_PASS, "{}", cols.stderr);
    assert_eq!(json(&cols)["lhs"], "[1,0]");
}

#[test]
fn adjsum_accepts_singular_spec() {
    let out = cli(&["adjsum", "--spec", r#"{"xs":["1","1"],"ys":["3","5"]}"#]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    let r = json(&out);
    assert_eq!((r["lhs"].as_str(), r["rhs"].as_str()), (Some("0"), Some("0")));
}

#[test]
fn every_spec_command_passes_on_example() {
    for cmd in ["det", "inv", "invsum", "adjsum", "border"] {
        let out = cli(&[cmd, "--spec", SPEC_12_35]);
        assert_eq!(out.code, EXIT_PASS, "{cmd}: {}", out.stderr);
        assert_eq!(json(&out)["pass"], true, "{cmd}");
    }
    let inv = json(&cli(&["inv", "--spec", SPEC_12_35]));
    assert_eq!(inv["lhs"], "[[60,-70],[-84,105]]");
    assert_eq!(json(&cli(&["det", "--spec", SPEC_12_35]))["lhs"], "1/420");
}

#[test]
fn input_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["invsum", "--spec", r#"{"xs":["1"],"ys":["-1"]}"#],
        &["invsum", "--spec", r#"{"xs":["1","2"],"ys":["3"]}"#],
        &["invsum", "--spec", "{not json"],
        &["invsum", "--spec", r#"{"xs":["1"],"ys":["x"]}"#],
        &["inv", "--spec", r#"{"xs":["1","1"],"ys":["3","5"]}"#],
        &["min-det", "--spec", r#"{"kind":"min","ring":{"prime":101},"xs":["1"],"ys":["2"]}"#],
        &["min-det", "--ring", "prime:101", "--spec", r#"{"kind":"min","xs":["1"],"ys":["2"]}"#],
        &["gen", "--kind", "min", "--ring", "prime:101"],
        &["verify", "--n", "9"],
        &["verify", "--trials", "0"],
        &["det", "--ring", "prime:100", "--spec", SPEC_12_35],
        &["no-such-command"],
        &["det", "/nonexistent/spec.json"],
    ];
    for args in cases {
        let out = cli(args);
        assert_eq!(out.code, EXIT_INPUT, "{args:?} gave {out:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn ring_override_and_prime_rendering() {
    let out = cli(&["invsum", "--ring", "prime:101", "--spec", SPEC_12_35]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    assert_eq!(json(&out)["lhs"], "11");
    let det = json(&cli(&["det", "--ring", "prime:101", "--spec", SPEC_12_35]));
    // 1/420 in 𝔽₁₀₁: 420 ≡ 16 and 16 · 19 = 304 ≡ 1.
    assert_eq!(det["lhs"], "19");
}

#[test]
fn minus_convention_negates_ys() {
    let plus = cli(&["build", "--format", "csv", "--spec", SPEC_12_35]);
    assert_eq!(plus.stdout, "1/4,1/6\n1/5,1/7\n");
    let minus = cli(&["build", "--format", "csv", "--minus-convention", "--spec", r#"{"xs":["1","2"],"ys":["-3","-5"]}"#]);
    assert_eq!(minus.stdout, plus.stdout);
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let a = cli(&["gen", "--seed", "9", "--n", "4"]);
    let b = cli(&["gen", "--seed", "9", "--n", "4"]);
    assert_eq!(a, b);
    let spec = json(&a);
    assert_eq!(spec["xs"].as_array().unwrap().len(), 4);
    assert_eq!(spec["ring"], "rational");
    let out = cli(&["invsum", "--spec", &a.stdout]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);

    let min = cli(&["gen", "--kind", "min", "--seed", "3", "--n", "3"]);
    assert_eq!(json(&min)["kind"], "min");
    assert_eq!(cli(&["min-det", "--spec", &min.stdout]).code, EXIT_PASS);

    let degenerate = cli(&["gen", "--allow-degenerate", "--seed", "1", "--n", "5"]);
    assert_eq!(cli(&["adjsum", "--spec", &degenerate.stdout]).code, EXIT_PASS);
}

#[test]
fn verify_formats() {
    let out = cli(&["verify", "--seed", "5", "--trials", "3", "--n", "4"]);
    assert_eq!(out.code, EXIT_PASS);
    let suite = json(&out);
    assert_eq!(suite["seed"], 5);
    assert_eq!(suite["failed"], 0);
    assert!(suite["reports"].as_array().unwrap().iter().all(|r| r["pass"] == true && r["lhs"] == r["rhs"]));

    let csv = cli(&["verify", "--seed", "5", "--trials", "3", "--n", "4", "--format", "csv"]);
    assert!(csv.stdout.starts_with("identity,lhs,rhs,pass\n"));
    let text = cli(&["verify", "--seed", "5", "--trials", "3", "--n", "4", "--format", "text"]);
    assert!(text.stdout.lines().all(|l| l.ends_with("[PASS]")));
}

#[test]
fn lemma_ab_reports_every_trial() {
    let out = cli(&["lemma-ab", "--trials", "7", "--seed", "2"]);
    assert_eq!(out.code, EXIT_PASS);
    let reports = json(&out);
    assert_eq!(reports.as_array().unwrap().len(), 7);
    assert!(reports.as_array().unwrap().iter().all(|r| r["identity"] == "lemma_ab" && r["seed"] == 2));
}

#[test]
fn canary_csv_table() {
    let out = cli(&["canary", "--sizes", "3,6", "--format", "csv"]);
    assert_eq!(out.code, EXIT_PASS);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "n,method,entry_sum_residual,identity_residual,elapsed");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("3,closed_form,") && lines[2].starts_with("3,gauss_pp,"));

    let spec = cli(&["canary", "--spec", SPEC_12_35]);
    assert_eq!(json(&spec).as_array().unwrap().len(), 2);
}

#[test]
fn binary_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cauchy"))
        .args(["invsum", "--format", "text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(SPEC_12_35.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "theorem1_inverse_entry_sum: 11 vs 11 [PASS]\n");

    let bad = Command::new(env!("CARGO_BIN_EXE_cauchy"))
        .args(["invsum", "--spec", r#"{"xs":["1"],"ys":["-1"]}"#])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

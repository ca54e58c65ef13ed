use std::process::Command;

use serde_json::Value;

fn lpi(args: &[&str]) -> (i32, String, String) {
    lpi_env(args, &[])
}

fn lpi_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lpi"));
    cmd.args(args).env_remove("LPI_CAP").env_remove("LPI_WORKERS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn al_verify_counts_all_tuples() {
    let (code, out, err) = lpi(&["al-verify", "--n", "2", "--field", "Fp:2", "--mode", "exhaustive"]);
    assert_eq!(code, 0, "{err}");
    let j = json(&out);
    assert_eq!(j["evaluations"], 65_536);
    assert_eq!(j["outcome"], "holds");
    assert!(err.is_empty());
}

#[test]
fn square_is_not_an_identity_on_gl2_f2() {
    let (code, out, _) = lpi(&["check-gi", "--algebra", "M2@Fp:2", "--word", "x1^2"]);
    assert_eq!(code, 1);
    let j = json(&out);
    assert_eq!(j["outcome"], "counterexample");
    assert_eq!(j["witness"], serde_json::json!([[[0, 1], [1, 1]]]));
}

#[test]
fn witness_reports_profile() {
    let (code, out, _) = lpi(&["witness", "--expr", "1 - x1^2 + x1^5"]);
    assert_eq!(code, 0);
    let d = &json(&out)["details"];
    assert_eq!((d["l"].as_i64(), d["r"].as_i64(), d["d"].as_i64()), (Some(0), Some(5), Some(23)));
}

#[test]
fn errors_go_to_stderr_with_exit_2() {
    for args in [
        &["check-lpi", "--algebra", "M2@Fp:4", "--expr", "x1"][..],
        &["check-lpi", "--algebra", "M2@Fp:2", "--expr", "x1 +"],
        &["al-verify", "--n", "2", "--field", "ZZ"],
        &["frobnicate"],
        &["bounds"],
    ] {
        let (code, out, err) = lpi(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}: {out}");
        assert!(!err.is_empty());
    }
}

#[test]
fn parse_errors_carry_line_and_column() {
    let (code, _, err) = lpi(&["parse", "--expr", "1 + x1*\n  x9"]);
    assert_eq!(code, 2);
    assert!(err.contains("2:"), "{err}");
}

#[test]
fn cap_is_enforced_and_read_from_env() {
    let (code, _, err) = lpi(&["check-lpi", "--algebra", "M2@Fp:3", "--expr", "S(4)", "--cap", "1000"]);
    assert_eq!(code, 2);
    assert!(err.contains("cap"), "{err}");
    let (code, _, _) = lpi_env(&["check-lpi", "--algebra", "M2@Fp:3", "--expr", "S(4)"], &[("LPI_CAP", "1000")]);
    assert_eq!(code, 2);
    let (code, out, _) =
        lpi_env(&["check-lpi", "--algebra", "M2@Fp:2", "--expr", "S(4)"], &[("LPI_WORKERS", "3")]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["config"]["workers"], 3);
}

#[test]
fn random_mode_records_a_seed() {
    let (code, out, _) = lpi(&["check-lpi", "--algebra", "M2@ZZ", "--expr", "S(4)", "--mode", "random", "--budget", "50"]);
    assert_eq!(code, 0);
    let j = json(&out);
    assert!(j["seed"].is_u64());
    assert_eq!(j["config"]["seed"], j["seed"]);
    assert_eq!(j["evaluations"], 50);
}

#[test]
fn every_subcommand_runs() {
    let cases: [(&[&str], i32); 12] = [
        (&["parse", "--expr", "S(3)"], 0),
        (&["check-lpi", "--algebra", "T2@Fp:2", "--expr", "(x1*x2 - x2*x1)^2"], 0),
        (&["check-gi", "--algebra", "M2@Fp:2", "--word", "x1^6"], 0),
        (&["al-verify", "--n", "1", "--field", "Fp:3"], 0),
        (&["witness", "--expr", "1 - x1^-2 + x1^3"], 0),
        (&["nilbound", "--algebra", "T2@Fp:2"], 0),
        (&["annihilator", "--algebra", "M2@Fp:2"], 0),
        (&["counterexample", "--g", "x^3 - 2*x"], 0),
        (&["bounds", "--d", "3"], 0),
        (&["quotient", "--seed", "1", "--budget", "50"], 0),
        (&["s3-expand"], 0),
        (&["idempotents", "--algebra", "M2@Fp:2"], 0),
    ];
    for (args, want) in cases {
        let (code, out, err) = lpi(args);
        assert_eq!(code, want, "{args:?}: {err}");
        assert_eq!(json(&out)["command"], args[0]);
    }
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, err) = lpi(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check-lpi"));
    assert!(err.is_empty());
}

use std::process::{Command, Output};

use quatcs_cli::SuiteReport;

fn quatcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatcs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (String, SuiteReport) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = quatcs(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(&text).unwrap();
    (text, report)
}

#[test]
fn passing_suite_exits_zero() {
    let out = quatcs(&["--suite", "core-algebra", "--trunc-dim", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("PASS core-algebra"));
}

#[test]
fn failed_check_exits_one() {
    // three radial nodes cannot certify degree-2 symbols at N = 6
    let out = quatcs(&["--suite", "quantize-canonical", "--trunc-dim", "6", "--radial-order", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(quatcs(&["--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(quatcs(&["--no-such-flag"]).status.code(), Some(2));
}

#[test]
fn bad_config_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "trunc-dim = [1, 2").unwrap();
    assert_eq!(quatcs(&["--config", bad.to_str().unwrap()]).status.code(), Some(3));
    let unknown = dir.path().join("unknown.toml");
    std::fs::write(&unknown, "colour = 3\n").unwrap();
    assert_eq!(quatcs(&["--config", unknown.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(quatcs(&["--trunc-dim", "2"]).status.code(), Some(3));
    assert_eq!(quatcs(&["--tolerance=-1"]).status.code(), Some(3));
    assert_eq!(quatcs(&["--config", "/nonexistent/quatcs.toml"]).status.code(), Some(3));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "trunc-dim = 5\nseed = 7\ntolerance = 1e-6\n").unwrap();
    let p = path.to_str().unwrap();
    let (_, r) = json(&["--suite", "cs", "--config", p, "--seed", "9"]);
    assert_eq!(r.config.trunc_dim, 5);
    assert_eq!(r.config.seed, 9);
    assert_eq!(r.config.tolerance, Some(1e-6));
    assert!(r.checks.iter().all(|c| c.tolerance == 1e-6));
}

#[test]
fn json_round_trips_bitwise() {
    let (text, r) = json(&["--suite", "quantize-canonical", "--trunc-dim", "6"]);
    assert!(r.passed);
    let again = quatcs_cli::emit_report(&r, quatcs_cli::Format::Json);
    assert_eq!(String::from_utf8(again).unwrap(), text);
    let corner = r.checks.iter().find(|c| c.id == "commutator-corner").unwrap();
    assert_eq!(corner.values.len(), 1);
    assert!((corner.values[0].x0 + 5.0).abs() < 1e-12);
}

#[test]
fn csv_has_one_row_per_check() {
    let out = quatcs(&["--suite", "slice", "--trunc-dim", "4", "--format", "csv"]);
    assert!(out.status.success());
    let (_, r) = json(&["--suite", "slice", "--trunc-dim", "4"]);
    let mut rd = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(
        rd.headers().unwrap().iter().collect::<Vec<_>>(),
        ["suite", "id", "anchor", "max_error", "tolerance", "passed", "values"]
    );
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), r.checks.len());
    for (row, check) in rows.iter().zip(&r.checks) {
        assert_eq!(&row[1], check.id);
        assert_eq!(row[3].parse::<f64>().unwrap().to_bits(), check.max_error.to_bits());
    }
}

#[test]
fn runs_are_deterministic() {
    let args = ["--suite", "all", "--trunc-dim", "4", "--seed", "11"];
    let (_, mut a) = json(&args);
    let (_, mut b) = json(&args);
    a.wall_ms = 0;
    b.wall_ms = 0;
    let ea = quatcs_cli::emit_report(&a, quatcs_cli::Format::Json);
    let eb = quatcs_cli::emit_report(&b, quatcs_cli::Format::Json);
    assert_eq!(ea, eb);
}

#[test]
fn all_runs_every_suite() {
    let (_, r) = json(&["--trunc-dim", "4"]);
    assert_eq!(r.suite, "all");
    assert!(r.suites().len() >= 8, "{:?}", r.suites());
    assert!(r.passed);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = quatcs(&[
        "--suite",
        "hermite-two",
        "--trunc-dim",
        "4",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: SuiteReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.suite, "hermite-two");
}

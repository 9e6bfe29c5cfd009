//! Suite reports and their JSON, CSV and text encodings.
//!
//! Floating-point values are written with 17 significant digits so that a
//! parse recovers them bit for bit; non-finite values become `null`.

use std::fmt::Write as _;

use quatcs::quaternion::Quaternion;
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::config::Config;

/// One verified identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub id: String,
    /// Short statement of the identity being checked.
    pub anchor: String,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub max_error: f64,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub tolerance: f64,
    pub passed: bool,
    /// Quaternions attached to the check (witness pairs, corner values).
    #[serde(
        default,
        skip_serializing_if = "Vec::is_empty",
        serialize_with = "ser_quats",
        deserialize_with = "de_quats"
    )]
    pub values: Vec<Quaternion>,
}

impl CheckRecord {
    pub fn new(suite: &str, id: &str, anchor: &str, max_error: f64, tolerance: f64) -> Self {
        Self {
            suite: suite.to_string(),
            id: id.to_string(),
            anchor: anchor.to_string(),
            max_error,
            tolerance,
            passed: max_error.is_finite() && max_error <= tolerance,
            values: Vec::new(),
        }
    }

    pub fn with_values(mut self, values: Vec<Quaternion>) -> Self {
        self.values = values;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: Config,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
    pub wall_ms: u64,
}

impl SuiteReport {
    pub fn new(suite: &str, config: Config, checks: Vec<CheckRecord>, wall_ms: u64) -> Self {
        Self {
            suite: suite.to_string(),
            passed: checks.iter().all(|c| c.passed),
            config,
            checks,
            wall_ms,
        }
    }

    /// Distinct suite names among the checks, in first-seen order.
    pub fn suites(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for c in &self.checks {
            if !out.contains(&c.suite.as_str()) {
                out.push(&c.suite);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Encode a report. Field order is fixed by the struct definitions.
pub fn emit_report(report: &SuiteReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes");
            out.push(b'\n');
            out
        }
        Format::Csv => emit_csv(report),
        Format::Text => emit_text(report).into_bytes(),
    }
}

fn emit_csv(report: &SuiteReport) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "id", "anchor", "max_error", "tolerance", "passed", "values"])
        .expect("in-memory write");
    for c in &report.checks {
        let values = c
            .values
            .iter()
            .map(|q| quat_text(*q))
            .collect::<Vec<_>>()
            .join(" ");
        w.write_record([
            c.suite.as_str(),
            c.id.as_str(),
            c.anchor.as_str(),
            &num_text(c.max_error),
            &num_text(c.tolerance),
            if c.passed { "true" } else { "false" },
            &values,
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn emit_text(report: &SuiteReport) -> String {
    let mut s = String::new();
    let c = &report.config;
    let _ = writeln!(
        s,
        "suite {}  N={} grid=({}, {}, {}, {}) seed={}",
        report.suite, c.trunc_dim, c.radial_order, c.theta_nodes, c.phi_order, c.psi_nodes, c.seed
    );
    for r in &report.checks {
        let _ = writeln!(
            s,
            "{} {:<20} {:<32} err {:>10.3e}  tol {:.0e}  {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.suite,
            r.id,
            r.max_error,
            r.tolerance,
            r.anchor
        );
    }
    let failed = report.checks.iter().filter(|r| !r.passed).count();
    let _ = writeln!(
        s,
        "{} checks, {} failed, {} ms",
        report.checks.len(),
        failed,
        report.wall_ms
    );
    s
}

fn num_text(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn quat_text(q: Quaternion) -> String {
    let [a, b, c, d] = q.to_array();
    format!("[{},{},{},{}]", num_text(a), num_text(b), num_text(c), num_text(d))
}

pub(crate) fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(num_text(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

pub(crate) fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_f64(v, s),
        None => s.serialize_none(),
    }
}

fn ser_quats<S: Serializer>(qs: &[Quaternion], s: S) -> Result<S::Ok, S::Error> {
    let body = qs.iter().map(|q| quat_text(*q)).collect::<Vec<_>>().join(",");
    let raw = RawValue::from_string(format!("[{body}]")).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

fn de_f64<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

fn de_quats<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Quaternion>, D::Error> {
    let raw = Vec::<[Option<f64>; 4]>::deserialize(d)?;
    Ok(raw
        .into_iter()
        .map(|a| Quaternion::from_array(a.map(|v| v.unwrap_or(f64::NAN))))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SuiteReport {
        let checks = vec![
            CheckRecord::new("cs", "a", "x = y", 1.0 / 3.0, 1e-12),
            CheckRecord::new("cs", "b", "corner", 2e-16, 1e-13)
                .with_values(vec![Quaternion::new(0.1, -2.0 / 7.0, 1e-300, 5.0)]),
        ];
        SuiteReport::new("cs", Config::default(), checks, 3)
    }

    #[test]
    fn json_numbers_have_seventeen_digits() {
        let text = String::from_utf8(emit_report(&sample(), Format::Json)).unwrap();
        assert!(text.contains("3.3333333333333331e-1"), "{text}");
        assert!(text.contains("\"values\""));
    }

    #[test]
    fn non_finite_becomes_null() {
        let r = SuiteReport::new(
            "x",
            Config::default(),
            vec![CheckRecord::new("x", "inf", "", f64::INFINITY, 0.0)],
            0,
        );
        let text = String::from_utf8(emit_report(&r, Format::Json)).unwrap();
        assert!(text.contains("\"max_error\": null"));
        assert!(!r.passed);
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert!(back.checks[0].max_error.is_nan());
    }

    #[test]
    fn empty_report_is_valid() {
        let r = SuiteReport::new("none", Config::default(), vec![], 0);
        assert!(r.passed);
        let v: serde_json::Value = serde_json::from_slice(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(v["checks"].as_array().unwrap().len(), 0);
        let csv = String::from_utf8(emit_report(&r, Format::Csv)).unwrap();
        assert_eq!(csv.lines().count(), 1);
    }

    #[test]
    fn field_order_is_stable() {
        let text = String::from_utf8(emit_report(&sample(), Format::Json)).unwrap();
        // top-level keys sit at two spaces of indentation
        let keys: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        assert_eq!(keys, ["suite", "config", "checks", "passed", "wall_ms"]);
    }
}

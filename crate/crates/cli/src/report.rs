//! CSV rows and JSON summaries.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::RunError;

/// Version of the CSV column layout.
pub const CSV_VERSION: u32 = 1;
pub const FIXED_COLUMNS: [&str; 7] = ["scenario", "t", "kappa", "alpha", "hs", "leading", "drift"];

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub scenario: String,
    pub t: f64,
    pub kappa: f64,
    pub alpha: f64,
    pub hs: f64,
    pub leading: f64,
    pub drift: f64,
    pub norms: Vec<f64>,
}

/// `|alpha(t) - alpha(0)| / max(alpha(0), 1e-300)`.
pub fn relative_drift(alpha_t: f64, alpha_0: f64) -> f64 {
    (alpha_t - alpha_0).abs() / alpha_0.max(1e-300)
}

/// 17 significant digits.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// One pass/fail flag, tied to a single acceptance criterion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assertion {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

impl Assertion {
    /// Passes when `measured <= threshold`.
    pub fn at_most(criterion: u8, name: impl Into<String>, measured: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self { criterion, name: name.into(), passed: measured <= threshold, measured, threshold, detail: detail.into() }
    }

    /// Passes when `measured >= threshold`.
    pub fn at_least(criterion: u8, name: impl Into<String>, measured: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self { criterion, name: name.into(), passed: measured >= threshold, measured, threshold, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub csv_version: u32,
    pub scenario: String,
    pub seed: u64,
    pub rows: usize,
    pub max_drift: Option<f64>,
    pub passed: bool,
    pub assertions: Vec<Assertion>,
    pub notes: Vec<String>,
}

impl Summary {
    pub fn new(scenario: &str, seed: u64, rows: &[ReportRow], assertions: Vec<Assertion>, notes: Vec<String>) -> Self {
        let max_drift = rows.iter().map(|r| r.drift).filter(|d| !d.is_nan()).fold(None, |m: Option<f64>, d| Some(m.map_or(d, |m| m.max(d))));
        Self {
            csv_version: CSV_VERSION,
            scenario: scenario.into(),
            seed,
            rows: rows.len(),
            max_drift,
            passed: assertions.iter().all(|a| a.passed),
            assertions,
            notes,
        }
    }
}

pub fn write_csv(out: impl Write, norm_headers: &[String], rows: &[ReportRow]) -> Result<(), RunError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let header: Vec<&str> = FIXED_COLUMNS.iter().copied().chain(norm_headers.iter().map(String::as_str)).collect();
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.scenario.clone()];
        rec.extend([r.t, r.kappa, r.alpha, r.hs, r.leading, r.drift].into_iter().map(format_float));
        rec.extend(r.norms.iter().map(|&x| format_float(x)));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Paths of the two report files.
pub fn report_paths(dir: &Path, scenario: &str) -> (PathBuf, PathBuf) {
    (dir.join(format!("{scenario}.csv")), dir.join(format!("{scenario}.summary.json")))
}

pub fn write_reports(dir: &Path, norm_headers: &[String], rows: &[ReportRow], summary: &Summary) -> Result<(PathBuf, PathBuf), RunError> {
    std::fs::create_dir_all(dir)?;
    let (csv_path, json_path) = report_paths(dir, &summary.scenario);
    write_csv(std::fs::File::create(&csv_path)?, norm_headers, rows)?;
    let mut json = serde_json::to_string_pretty(summary)?;
    json.push('\n');
    std::fs::write(&json_path, json)?;
    Ok((csv_path, json_path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drift_guards_zero() {
        assert_eq!(relative_drift(2.0, 1.0), 1.0);
        assert_eq!(relative_drift(1e-300, 0.0), 1.0);
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(f64::NAN), "NaN");
        assert_eq!(format_float(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn csv_layout() {
        let row = ReportRow { scenario: "s".into(), t: 0.0, kappa: 5.0, alpha: 1.0, hs: 0.5, leading: 0.9, drift: 0.0, norms: vec![2.0] };
        let mut buf = Vec::new();
        write_csv(&mut buf, &["h_minus_one".into()], &[row]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.split('\n');
        assert_eq!(lines.next().unwrap(), "scenario,t,kappa,alpha,hs,leading,drift,h_minus_one");
        assert!(lines.next().unwrap().starts_with("s,0.0000000000000000e0,5.0000000000000000e0,"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn summary_passes_only_if_all_pass() {
        let a = Assertion::at_most(6, "drift", 1e-9, 1e-6, "");
        let b = Assertion::at_least(11, "size", 1e-7, 1e-6, "");
        assert!(a.passed && !b.passed);
        assert!(!Summary::new("x", 0, &[], vec![a.clone(), b], vec![]).passed);
        assert!(Summary::new("x", 0, &[], vec![a], vec![]).passed);
    }
}

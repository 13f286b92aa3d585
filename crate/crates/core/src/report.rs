//! Verification reports: one row per checked case, serialized as JSON, CSV or text.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    pub params: Map<String, Value>,
    /// `[re, im]`; absent for exact checks.
    pub lhs: Option<[f64; 2]>,
    pub rhs: Option<[f64; 2]>,
    pub abs_err: f64,
    /// `abs_err / scale`; the case passes iff this is `<= tolerance`.
    pub rel_err: f64,
    pub scale: f64,
    pub tolerance: f64,
    pub tail_bound: f64,
    pub pass: bool,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl Case {
    pub fn numeric(name: impl Into<String>, lhs: Complex64, rhs: Complex64, scale: f64, tolerance: f64) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = if scale > 0.0 { abs_err / scale } else { abs_err };
        Self {
            name: name.into(),
            params: Map::new(),
            lhs: Some(pair(lhs)),
            rhs: Some(pair(rhs)),
            abs_err,
            rel_err,
            scale,
            tolerance,
            tail_bound: 0.0,
            pass: rel_err <= tolerance,
        }
    }

    /// `|lhs − rhs| / max(|lhs|, |rhs|)`.
    pub fn relative(name: impl Into<String>, lhs: Complex64, rhs: Complex64, tolerance: f64) -> Self {
        let scale = lhs.norm().max(rhs.norm());
        Self::numeric(name, lhs, rhs, scale, tolerance)
    }

    pub fn absolute(name: impl Into<String>, lhs: Complex64, rhs: Complex64, tolerance: f64) -> Self {
        Self::numeric(name, lhs, rhs, 1.0, tolerance)
    }

    pub fn exact(name: impl Into<String>, ok: bool) -> Self {
        let e = if ok { 0.0 } else { 1.0 };
        Self {
            name: name.into(),
            params: Map::new(),
            lhs: None,
            rhs: None,
            abs_err: e,
            rel_err: e,
            scale: 1.0,
            tolerance: 0.0,
            tail_bound: 0.0,
            pass: ok,
        }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn tail(mut self, t: f64) -> Self {
        self.tail_bound = t;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Always null so that identical configs give identical bytes.
    pub wall_time: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, cases: Vec<Case>) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        let summary = Summary { total: cases.len(), passed, failed: cases.len() - passed, wall_time: None };
        Self { suite: suite.into(), cases, summary }
    }

    pub fn merge(suite: impl Into<String>, parts: Vec<VerificationReport>) -> Self {
        Self::new(suite, parts.into_iter().flat_map(|r| r.cases).collect())
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_pair(z: &Option<[f64; 2]>) -> (String, String) {
    z.map_or((String::new(), String::new()), |[a, b]| (num(a), num(b)))
}

pub fn emit_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from(
                "suite,name,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,scale,tolerance,tail_bound,pass\n",
            );
            for c in &report.cases {
                let (lr, li) = opt_pair(&c.lhs);
                let (rr, ri) = opt_pair(&c.rhs);
                let params = serde_json::to_string(&c.params).unwrap().replace('"', "\"\"");
                let _ = writeln!(
                    s,
                    "{},{},\"{}\",{lr},{li},{rr},{ri},{},{},{},{},{},{}",
                    report.suite,
                    c.name,
                    params,
                    num(c.abs_err),
                    num(c.rel_err),
                    num(c.scale),
                    num(c.tolerance),
                    num(c.tail_bound),
                    c.pass
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.cases {
                let _ = writeln!(
                    s,
                    "[{}] {}  err {:.3e} (tol {:.1e})",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.rel_err,
                    c.tolerance
                );
            }
            let m = &report.summary;
            let _ = writeln!(s, "{}: {}/{} passed, {} failed", report.suite, m.passed, m.total, m.failed);
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_valid_json() {
        let r = VerificationReport::new("none", vec![]);
        let j = emit_report(&r, Format::Json);
        let v: Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["summary"]["total"], 0);
        assert_eq!(v["summary"]["wall_time"], Value::Null);
    }

    #[test]
    fn json_round_trip() {
        let c = Case::relative("x", Complex64::new(1.0, 0.5), Complex64::new(1.0 + 1e-9, 0.5), 1e-6).param("p", 5);
        let r = VerificationReport::new("t", vec![c, Case::exact("bad", false)]);
        assert_eq!(r.summary.failed, 1);
        let back: VerificationReport = serde_json::from_str(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(back, r);
        let csv = emit_report(&r, Format::Csv);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(2).unwrap().ends_with("false"));
    }
}

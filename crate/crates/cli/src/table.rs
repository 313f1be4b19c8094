//! Result rows and their CSV / JSON emission.

use std::io::Write;

use serde_json::{json, Value};

use crate::config::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Recorded value without a pass/fail verdict.
    Info,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Row {
    pub check: String,
    pub params: String,
    pub value: f64,
    pub reference: Option<f64>,
    pub abs_defect: Option<f64>,
    pub rel_defect: Option<f64>,
    pub tolerance: Option<f64>,
    pub status: Status,
    pub note: String,
}

pub const COLUMNS: [&str; 9] = [
    "check",
    "params",
    "value",
    "reference",
    "abs_defect",
    "rel_defect",
    "tolerance",
    "status",
    "note",
];

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

impl Row {
    fn base(check: &str, params: String, value: f64) -> Row {
        Row {
            check: check.to_string(),
            params,
            value,
            reference: None,
            abs_defect: None,
            rel_defect: None,
            tolerance: None,
            status: Status::Info,
            note: String::new(),
        }
    }

    /// Passes when `|value − reference| ≤ tol·|reference|`.
    pub fn rel(check: &str, params: String, value: f64, reference: f64, tol: f64) -> Row {
        let abs = (value - reference).abs();
        let rel = abs / reference.abs();
        Row {
            reference: Some(reference),
            abs_defect: Some(abs),
            rel_defect: Some(rel),
            tolerance: Some(tol),
            status: verdict(rel <= tol),
            ..Row::base(check, params, value)
        }
    }

    /// Passes when `|value − reference| ≤ tol`.
    pub fn abs(check: &str, params: String, value: f64, reference: f64, tol: f64) -> Row {
        let abs = (value - reference).abs();
        Row {
            reference: Some(reference),
            abs_defect: Some(abs),
            rel_defect: (reference != 0.0).then(|| abs / reference.abs()),
            tolerance: Some(tol),
            status: verdict(abs <= tol),
            ..Row::base(check, params, value)
        }
    }

    /// A measured defect that must not exceed `tol`.
    pub fn defect(check: &str, params: String, defect: f64, tol: f64) -> Row {
        Row {
            reference: Some(0.0),
            abs_defect: Some(defect),
            tolerance: Some(tol),
            status: verdict(defect <= tol),
            ..Row::base(check, params, defect)
        }
    }

    /// Passes when `value ≤ limit + tol`.
    pub fn at_most(check: &str, params: String, value: f64, limit: f64, tol: f64) -> Row {
        let excess = (value - limit).max(0.0);
        Row {
            reference: Some(limit),
            abs_defect: Some(excess),
            tolerance: Some(tol),
            status: verdict(value <= limit + tol),
            ..Row::base(check, params, value)
        }
    }

    pub fn info(check: &str, params: String, value: f64, reference: Option<f64>) -> Row {
        let abs = reference.map(|r| (value - r).abs());
        Row {
            reference,
            abs_defect: abs,
            rel_defect: reference
                .filter(|r| *r != 0.0)
                .map(|r| (value - r).abs() / r.abs()),
            ..Row::base(check, params, value)
        }
    }

    pub fn error(check: &str, params: String, err: impl std::fmt::Display) -> Row {
        Row {
            status: Status::Fail,
            note: err.to_string(),
            ..Row::base(check, params, f64::NAN)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Row {
        self.note = note.into();
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        String::new()
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn json_float(v: Option<f64>) -> Value {
    match v {
        Some(x) if x.is_finite() => json!(x),
        _ => Value::Null,
    }
}

pub fn write_rows(rows: &[Row], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(COLUMNS)?;
            for r in rows {
                w.write_record([
                    r.check.clone(),
                    r.params.clone(),
                    fmt_float(r.value),
                    fmt_opt(r.reference),
                    fmt_opt(r.abs_defect),
                    fmt_opt(r.rel_defect),
                    fmt_opt(r.tolerance),
                    r.status.as_str().to_string(),
                    r.note.clone(),
                ])?;
            }
            w.flush()
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "check": r.check,
                        "params": r.params,
                        "value": json_float(Some(r.value)),
                        "reference": json_float(r.reference),
                        "abs_defect": json_float(r.abs_defect),
                        "rel_defect": json_float(r.rel_defect),
                        "tolerance": json_float(r.tolerance),
                        "status": r.status.as_str(),
                        "note": r.note,
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &items)?;
            writeln!(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_2_PI;

    #[test]
    fn csv_layout() {
        let rows = vec![
            Row::rel("gamma_ratio", "n=2".into(), FRAC_2_PI, FRAC_2_PI, 1e-12),
            Row::error("x", "n=1".into(), "boom"),
        ];
        let mut buf = Vec::new();
        write_rows(&rows, Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), COLUMNS.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "gamma_ratio,n=2,6.3661977236758138e-1,6.3661977236758138e-1,0.0000000000000000e0,0.0000000000000000e0,9.9999999999999998e-13,pass,"
        );
        assert_eq!(lines.next().unwrap(), "x,n=1,,,,,,fail,boom");
    }

    #[test]
    fn json_mirrors_columns() {
        let rows = vec![Row::defect("ortho", "n=1".into(), 1e-14, 1e-9)];
        let mut buf = Vec::new();
        write_rows(&rows, Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        let obj = v[0].as_object().unwrap();
        for c in COLUMNS {
            assert!(obj.contains_key(c), "{c}");
        }
        assert_eq!(obj["status"], "pass");
    }
}

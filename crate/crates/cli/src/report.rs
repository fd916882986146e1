//! Report serialization: CSV with a fixed header and LF line endings, or a
//! JSON array of objects with the same field names. Output is byte-stable
//! for a given row sequence.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use crate::config::OutputFormat;
use crate::sweep::ReportRow;

pub const CSV_COLUMNS: [&str; 19] = [
    "function",
    "a",
    "b",
    "alpha",
    "s",
    "mu",
    "p",
    "q",
    "theorem",
    "variant",
    "convex_fprime",
    "slog_second",
    "unit_range",
    "psi_le_one",
    "lhs",
    "rhs",
    "margin",
    "quad_converged",
    "status",
];

#[derive(Debug)]
pub enum ReportError {
    NoRows,
    Io { path: String, source: io::Error },
    Serialize(serde_json::Error),
}

impl fmt::Display for ReportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportError::NoRows => write!(f, "refusing to write an empty report"),
            ReportError::Io { path, source } => write!(f, "cannot write '{}': {}", path, source),
            ReportError::Serialize(e) => write!(f, "cannot serialize report: {}", e),
        }
    }
}

impl std::error::Error for ReportError {}

/// 17 significant digits, enough to round-trip any f64.
fn fmt_real(v: f64) -> String {
    format!("{:.16e}", v)
}

fn fmt_opt_real(v: Option<f64>) -> String {
    v.map(fmt_real).unwrap_or_default()
}

fn fmt_opt_flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "",
    }
}

pub fn render_csv(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    out.push_str(&CSV_COLUMNS.join(","));
    out.push('\n');
    for r in rows {
        let fields = [
            r.function.clone(),
            fmt_real(r.a),
            fmt_real(r.b),
            fmt_real(r.alpha),
            fmt_opt_real(r.s),
            fmt_opt_real(r.mu),
            fmt_opt_real(r.p),
            fmt_opt_real(r.q),
            r.theorem.clone(),
            r.variant.clone().unwrap_or_default(),
            fmt_opt_flag(r.convex_fprime).to_owned(),
            fmt_opt_flag(r.slog_second).to_owned(),
            fmt_opt_flag(r.unit_range).to_owned(),
            fmt_opt_flag(r.psi_le_one).to_owned(),
            fmt_opt_real(r.lhs),
            fmt_opt_real(r.rhs),
            fmt_opt_real(r.margin),
            fmt_opt_flag(r.quad_converged).to_owned(),
            r.status.clone(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json(rows: &[ReportRow]) -> Result<String, ReportError> {
    let mut s = serde_json::to_string_pretty(rows).map_err(ReportError::Serialize)?;
    s.push('\n');
    Ok(s)
}

/// Write `rows` to `path` in the requested format.
pub fn write_report(
    rows: &[ReportRow],
    format: OutputFormat,
    path: &Path,
) -> Result<(), ReportError> {
    if rows.is_empty() {
        return Err(ReportError::NoRows);
    }
    let contents = match format {
        OutputFormat::Csv => render_csv(rows),
        OutputFormat::Json => render_json(rows)?,
    };
    fs::write(path, contents).map_err(|source| ReportError::Io {
        path: path.display().to_string(),
        source,
    })
}

//! Sweep configuration: a single JSON object mapped onto [`SweepConfig`].

use std::fmt;
use std::path::PathBuf;

use hhfrac::bounds::{TheoremId, Variant};
use hhfrac::expr::parse;
use hhfrac::hypotheses::GridSpec;
use hhfrac::quad::QuadConfig;
use serde::Deserialize;

/// Output file format for sweep reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn label(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremName {
    T2,
    T5,
    T6,
    T7,
    Remark1,
}

impl TheoremName {
    pub fn id(self) -> TheoremId {
        match self {
            TheoremName::T2 => TheoremId::T2,
            TheoremName::T5 => TheoremId::T5,
            TheoremName::T6 => TheoremId::T6,
            TheoremName::T7 => TheoremId::T7,
            TheoremName::Remark1 => TheoremId::Remark1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantName {
    Printed,
    Corrected,
}

impl VariantName {
    pub fn variant(self) -> Variant {
        match self {
            VariantName::Printed => Variant::Printed,
            VariantName::Corrected => Variant::Corrected,
        }
    }
}

fn default_abs_tol() -> f64 {
    1e-12
}
fn default_rel_tol() -> f64 {
    1e-10
}
fn default_max_subdivisions() -> usize {
    2000
}

/// Quadrature tolerances, matching [`QuadConfig`].
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadSettings {
    #[serde(default = "default_abs_tol")]
    pub abs_tol: f64,
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "default_max_subdivisions")]
    pub max_subdivisions: usize,
}

impl Default for QuadSettings {
    fn default() -> Self {
        QuadSettings {
            abs_tol: default_abs_tol(),
            rel_tol: default_rel_tol(),
            max_subdivisions: default_max_subdivisions(),
        }
    }
}

fn default_points_per_axis() -> usize {
    33
}
fn default_random_pairs() -> usize {
    500
}
fn default_seed() -> u64 {
    42
}

/// Hypothesis-sampling resolution, matching [`GridSpec`].
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSettings {
    #[serde(default = "default_points_per_axis")]
    pub points_per_axis: usize,
    #[serde(default = "default_random_pairs")]
    pub random_pairs: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl Default for GridSettings {
    fn default() -> Self {
        GridSettings {
            points_per_axis: default_points_per_axis(),
            random_pairs: default_random_pairs(),
            seed: default_seed(),
        }
    }
}

/// A full sweep specification. Every combination of the coordinate lists
/// applicable to each selected theorem becomes one report row.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub functions: Vec<String>,
    pub a_values: Vec<f64>,
    pub b_values: Vec<f64>,
    pub alpha_values: Vec<f64>,
    #[serde(default)]
    pub s_values: Vec<f64>,
    #[serde(default)]
    pub mu_values: Vec<f64>,
    #[serde(default)]
    pub p_values: Vec<f64>,
    #[serde(default)]
    pub q_values: Vec<f64>,
    pub theorems: Vec<TheoremName>,
    #[serde(default)]
    pub variants: Vec<VariantName>,
    #[serde(default)]
    pub quad: QuadSettings,
    #[serde(default)]
    pub grid: GridSettings,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub output_format: Option<OutputFormat>,
}

/// Configuration rejection, naming the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: &'static str,
    pub detail: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid config field '{}': {}", self.field, self.detail)
    }
}

impl std::error::Error for ConfigError {}

fn err(field: &'static str, detail: impl Into<String>) -> ConfigError {
    ConfigError {
        field,
        detail: detail.into(),
    }
}

impl SweepConfig {
    pub fn quad_config(&self) -> QuadConfig {
        QuadConfig {
            abs_tol: self.quad.abs_tol,
            rel_tol: self.quad.rel_tol,
            max_subdivisions: self.quad.max_subdivisions,
        }
    }

    pub fn grid_spec(&self) -> GridSpec {
        GridSpec {
            points_per_axis: self.grid.points_per_axis,
            random_pairs: self.grid.random_pairs,
            seed: self.grid.seed,
        }
    }

    fn has(&self, t: TheoremName) -> bool {
        self.theorems.contains(&t)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.theorems.is_empty() {
            return Err(err("theorems", "no theorems selected"));
        }
        if self.functions.is_empty() {
            return Err(err("functions", "list is empty"));
        }
        for text in &self.functions {
            parse(text).map_err(|e| err("functions", format!("'{}': {}", text, e)))?;
        }
        if self.a_values.is_empty() {
            return Err(err("a_values", "list is empty"));
        }
        if self.b_values.is_empty() {
            return Err(err("b_values", "list is empty"));
        }
        for &a in &self.a_values {
            if !(a >= 0.0) {
                return Err(err("a_values", format!("need a >= 0, got {}", a)));
            }
            for &b in &self.b_values {
                if !(a < b) {
                    return Err(err(
                        "b_values",
                        format!("pair (a, b) = ({}, {}) needs a < b", a, b),
                    ));
                }
            }
        }
        if self.alpha_values.is_empty() {
            return Err(err("alpha_values", "list is empty"));
        }
        for &alpha in &self.alpha_values {
            if !(alpha > 0.0) {
                return Err(err(
                    "alpha_values",
                    format!("need alpha > 0, got {}", alpha),
                ));
            }
        }

        let needs_s = self.has(TheoremName::T5)
            || self.has(TheoremName::T6)
            || self.has(TheoremName::T7)
            || self.has(TheoremName::Remark1);
        let needs_mu = self.has(TheoremName::T5)
            || self.has(TheoremName::T7)
            || self.has(TheoremName::Remark1);
        if needs_s && self.s_values.is_empty() {
            return Err(err("s_values", "required by the selected theorems"));
        }
        if needs_mu && self.mu_values.is_empty() {
            return Err(err("mu_values", "required by the selected theorems"));
        }
        if self.has(TheoremName::T6) && self.p_values.is_empty() {
            return Err(err("p_values", "required by t6"));
        }
        if self.has(TheoremName::T7) && self.q_values.is_empty() {
            return Err(err("q_values", "required by t7"));
        }
        if needs_s && self.variants.is_empty() {
            return Err(err("variants", "required by the selected theorems"));
        }
        for &s in &self.s_values {
            if !(s > 0.0 && s <= 1.0) {
                return Err(err("s_values", format!("need s in (0, 1], got {}", s)));
            }
        }
        for &mu in &self.mu_values {
            if !(mu > 0.0 && mu < 1.0) {
                return Err(err("mu_values", format!("need mu in (0, 1), got {}", mu)));
            }
        }
        for &p in &self.p_values {
            if !(p > 1.0) {
                return Err(err("p_values", format!("need p > 1, got {}", p)));
            }
        }
        for &q in &self.q_values {
            if !(q >= 1.0) {
                return Err(err("q_values", format!("need q >= 1, got {}", q)));
            }
        }
        if !(self.quad.abs_tol > 0.0)
            || !(self.quad.rel_tol > 0.0)
            || self.quad.max_subdivisions == 0
        {
            return Err(err(
                "quad",
                "tolerances must be positive and max_subdivisions >= 1",
            ));
        }
        if self.grid.points_per_axis < 3 {
            return Err(err("grid", "points_per_axis must be >= 3"));
        }
        Ok(())
    }

    /// The exact number of rows a sweep of this config emits: the sum over
    /// selected theorems of the Cartesian product of their applicable lists.
    pub fn predicted_row_count(&self) -> usize {
        let f = self.functions.len();
        let ab = self.a_values.len() * self.b_values.len();
        let al = self.alpha_values.len();
        let (s, mu, p, q, v) = (
            self.s_values.len(),
            self.mu_values.len(),
            self.p_values.len(),
            self.q_values.len(),
            self.variants.len(),
        );
        self.theorems
            .iter()
            .map(|t| {
                f * ab
                    * match t {
                        TheoremName::T2 => al,
                        TheoremName::T5 => al * s * mu * v,
                        TheoremName::T6 => al * s * p * v,
                        TheoremName::T7 => al * s * mu * q * v,
                        TheoremName::Remark1 => s * mu * v,
                    }
            })
            .sum()
    }
}

pub fn load_config(text: &str) -> Result<SweepConfig, ConfigError> {
    serde_json::from_str(text).map_err(|e| err("config", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> SweepConfig {
        load_config(
            r#"{
                "functions": ["exp(x/2)"],
                "a_values": [0.0],
                "b_values": [1.0],
                "alpha_values": [1.0],
                "s_values": [1.0],
                "mu_values": [0.5],
                "theorems": ["t5"],
                "variants": ["printed", "corrected"]
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn minimal_config_is_valid() {
        let cfg = minimal();
        cfg.validate().unwrap();
        assert_eq!(cfg.quad.abs_tol, 1e-12);
        assert_eq!(cfg.grid.seed, 42);
        assert_eq!(cfg.predicted_row_count(), 2);
    }

    #[test]
    fn t6_requires_p_values() {
        let mut cfg = minimal();
        cfg.theorems = vec![TheoremName::T6];
        let e = cfg.validate().unwrap_err();
        assert_eq!(e.field, "p_values");
    }

    #[test]
    fn t7_requires_q_values() {
        let mut cfg = minimal();
        cfg.theorems = vec![TheoremName::T7];
        let e = cfg.validate().unwrap_err();
        assert_eq!(e.field, "q_values");
    }

    #[test]
    fn empty_theorems_rejected() {
        let mut cfg = minimal();
        cfg.theorems.clear();
        let e = cfg.validate().unwrap_err();
        assert!(e.detail.contains("no theorems selected"));
    }

    #[test]
    fn bad_interval_rejected() {
        let mut cfg = minimal();
        cfg.a_values = vec![0.0, 2.0];
        let e = cfg.validate().unwrap_err();
        assert_eq!(e.field, "b_values");
    }

    #[test]
    fn unparseable_function_rejected() {
        let mut cfg = minimal();
        cfg.functions = vec!["2*+3".into()];
        let e = cfg.validate().unwrap_err();
        assert_eq!(e.field, "functions");
    }

    #[test]
    fn unknown_json_keys_rejected() {
        let r = load_config(r#"{"functions": [], "bogus": 1}"#);
        assert!(r.is_err());
    }

    #[test]
    fn row_count_prediction() {
        let mut cfg = minimal();
        cfg.functions = vec!["exp(x/2)".into(), "x^2".into()];
        cfg.alpha_values = vec![0.5, 1.0, 1.5];
        assert_eq!(cfg.predicted_row_count(), 12);

        cfg.theorems = vec![TheoremName::T2, TheoremName::T5];
        // t2: 2*3 = 6; t5: 12
        assert_eq!(cfg.predicted_row_count(), 18);
    }
}

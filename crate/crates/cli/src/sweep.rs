//! The configuration-driven sweep: one row per applicable coordinate tuple.
//!
//! Rows are emitted in the lexicographic order of the coordinate tuple
//! (function, a, b, alpha, s, mu, p, q, theorem, variant) over the config
//! lists; coordinates a theorem does not use are pinned to their first index
//! so each theorem contributes exactly the Cartesian product of its
//! applicable lists. Expensive intermediates (parsed functions, hypothesis
//! flags, gap values) are cached across rows, which changes nothing about
//! the output since every operation is pure.

use std::collections::HashMap;

use hhfrac::bounds::{
    remark1_rhs, thm2_rhs, thm5_rhs, thm6_rhs, thm7_rhs, TheoremId, TheoremParams, Variant,
};
use hhfrac::expr::FuncSpec;
use hhfrac::fracint::{hh_gap, FracParams};
use hhfrac::quad::QuadConfig;
use serde::Serialize;

use crate::config::{ConfigError, SweepConfig};
use crate::verify::{psi_exponent, psi_flag, sampled_flags, SampledFlags};

/// Margin below which a corrected-variant row counts as a genuine
/// violation rather than quadrature noise.
pub const MARGIN_SLACK: f64 = 1e-9;

/// One sweep outcome. Optional coordinates are absent when the theorem does
/// not use them; optional results are absent when the row failed (see
/// `status`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub function: String,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub s: Option<f64>,
    pub mu: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub theorem: String,
    pub variant: Option<String>,
    pub convex_fprime: Option<bool>,
    pub slog_second: Option<bool>,
    pub unit_range: Option<bool>,
    pub psi_le_one: Option<bool>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub margin: Option<f64>,
    pub quad_converged: Option<bool>,
    pub status: String,
}

impl ReportRow {
    /// Whether every sampled hypothesis flag came back true.
    pub fn all_hypotheses_true(&self) -> bool {
        self.convex_fprime == Some(true)
            && self.slog_second == Some(true)
            && self.unit_range == Some(true)
            && self.psi_le_one == Some(true)
    }

    /// Whether this row is a corrected-variant (or variant-free) soundness
    /// violation despite all hypotheses holding: the signal that the
    /// verified statement itself is wrong somewhere.
    pub fn is_contradiction(&self) -> bool {
        let corrected = self.variant.as_deref() == Some("corrected") || self.variant.is_none();
        corrected
            && self.status == "ok"
            && self.all_hypotheses_true()
            && matches!(self.margin, Some(m) if m < -MARGIN_SLACK)
    }
}

/// Commas would break the unquoted CSV contract.
fn sanitize(msg: String) -> String {
    msg.replace(',', ";")
}

/// (function, a, b) list indices identifying one parsed function.
type FuncKey = (usize, usize, usize);
/// FuncKey plus the bits of the reals distinguishing the cache entry.
type FlagsKey = (usize, usize, usize, u64, u64);
type GapKey = (usize, usize, usize, u64);

struct SweepContext<'c> {
    config: &'c SweepConfig,
    quad_cfg: QuadConfig,
    funcs: HashMap<FuncKey, Result<FuncSpec, String>>,
    flags: HashMap<FlagsKey, SampledFlags>,
    gaps: HashMap<GapKey, Result<(f64, bool), String>>,
}

impl<'c> SweepContext<'c> {
    fn func(&mut self, fi: usize, ai: usize, bi: usize) -> Result<FuncSpec, String> {
        let config = self.config;
        self.funcs
            .entry((fi, ai, bi))
            .or_insert_with(|| {
                FuncSpec::new(
                    &config.functions[fi],
                    config.a_values[ai],
                    config.b_values[bi],
                )
                .map_err(|e| e.to_string())
            })
            .clone()
    }

    fn flags(
        &mut self,
        key: (usize, usize, usize),
        f: &FuncSpec,
        power: f64,
        s: f64,
    ) -> SampledFlags {
        let grid = self.config.grid_spec();
        *self
            .flags
            .entry((key.0, key.1, key.2, s.to_bits(), power.to_bits()))
            .or_insert_with(|| sampled_flags(f, power, s, &grid))
    }

    fn gap(
        &mut self,
        key: (usize, usize, usize),
        f: &FuncSpec,
        alpha: f64,
    ) -> Result<(f64, bool), String> {
        let quad_cfg = self.quad_cfg;
        self.gaps
            .entry((key.0, key.1, key.2, alpha.to_bits()))
            .or_insert_with(|| {
                FracParams::new(f.domain().0, f.domain().1, alpha)
                    .and_then(|p| hh_gap(f, &p, &quad_cfg))
                    .map(|r| (r.value, r.converged))
                    .map_err(|e| e.to_string())
            })
            .clone()
    }
}

/// Evaluate the full sweep. Per-row failures are recorded in the row's
/// `status`; only configuration problems abort.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<ReportRow>, ConfigError> {
    config.validate()?;
    let mut ctx = SweepContext {
        config,
        quad_cfg: config.quad_config(),
        funcs: HashMap::new(),
        flags: HashMap::new(),
        gaps: HashMap::new(),
    };

    let opt_list = |v: &[f64]| -> Vec<Option<f64>> {
        if v.is_empty() {
            vec![None]
        } else {
            v.iter().copied().map(Some).collect()
        }
    };
    let s_list = opt_list(&config.s_values);
    let mu_list = opt_list(&config.mu_values);
    let p_list = opt_list(&config.p_values);
    let q_list = opt_list(&config.q_values);

    let mut rows = Vec::with_capacity(config.predicted_row_count());
    for fi in 0..config.functions.len() {
        for ai in 0..config.a_values.len() {
            for bi in 0..config.b_values.len() {
                for (ali, &alpha) in config.alpha_values.iter().enumerate() {
                    for (si, &s) in s_list.iter().enumerate() {
                        for (mi, &mu) in mu_list.iter().enumerate() {
                            for (pi, &p) in p_list.iter().enumerate() {
                                for (qi, &q) in q_list.iter().enumerate() {
                                    for theorem in &config.theorems {
                                        let theorem = theorem.id();
                                        let coords = Coords {
                                            fi,
                                            ai,
                                            bi,
                                            alpha,
                                            s,
                                            mu,
                                            p,
                                            q,
                                            indices: [ali, si, mi, pi, qi],
                                        };
                                        emit_theorem_rows(&mut ctx, &coords, theorem, &mut rows);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rows)
}

struct Coords {
    fi: usize,
    ai: usize,
    bi: usize,
    alpha: f64,
    s: Option<f64>,
    mu: Option<f64>,
    p: Option<f64>,
    q: Option<f64>,
    /// [alpha, s, mu, p, q] loop indices, for the first-index guards.
    indices: [usize; 5],
}

fn emit_theorem_rows(
    ctx: &mut SweepContext,
    c: &Coords,
    theorem: TheoremId,
    rows: &mut Vec<ReportRow>,
) {
    let [ali, si, mi, pi, qi] = c.indices;
    // Coordinates the theorem does not use stay at their first index so the
    // row set is exactly the product of the applicable lists.
    let applicable = match theorem {
        TheoremId::T2 => si == 0 && mi == 0 && pi == 0 && qi == 0,
        TheoremId::T5 => c.s.is_some() && c.mu.is_some() && pi == 0 && qi == 0,
        TheoremId::T6 => c.s.is_some() && c.p.is_some() && mi == 0 && qi == 0,
        TheoremId::T7 => c.s.is_some() && c.mu.is_some() && c.q.is_some() && pi == 0,
        TheoremId::Remark1 => c.s.is_some() && c.mu.is_some() && ali == 0 && pi == 0 && qi == 0,
    };
    if !applicable {
        return;
    }
    if theorem == TheoremId::T2 {
        rows.push(build_row(ctx, c, theorem, None));
        return;
    }
    for variant in &ctx.config.variants {
        rows.push(build_row(ctx, c, theorem, Some(variant.variant())));
    }
}

fn build_row(
    ctx: &mut SweepContext,
    c: &Coords,
    theorem: TheoremId,
    variant: Option<Variant>,
) -> ReportRow {
    let config = ctx.config;
    // The Hölder bound derives its q from p; other theorems report the
    // coordinates they use.
    let (s_col, mu_col, p_col, q_col) = match theorem {
        TheoremId::T2 => (None, None, None, None),
        TheoremId::T5 | TheoremId::Remark1 => (c.s, c.mu, None, None),
        TheoremId::T6 => (c.s, None, c.p, c.p.map(|p| p / (p - 1.0))),
        TheoremId::T7 => (c.s, c.mu, None, c.q),
    };
    let alpha_col = if theorem == TheoremId::Remark1 {
        1.0
    } else {
        c.alpha
    };

    let mut row = ReportRow {
        function: config.functions[c.fi].clone(),
        a: config.a_values[c.ai],
        b: config.b_values[c.bi],
        alpha: alpha_col,
        s: s_col,
        mu: mu_col,
        p: p_col,
        q: q_col,
        theorem: theorem.label().to_owned(),
        variant: variant.map(|v| v.label().to_owned()),
        convex_fprime: None,
        slog_second: None,
        unit_range: None,
        psi_le_one: None,
        lhs: None,
        rhs: None,
        margin: None,
        quad_converged: None,
        status: "ok".to_owned(),
    };

    let key = (c.fi, c.ai, c.bi);
    let f = match ctx.func(c.fi, c.ai, c.bi) {
        Ok(f) => f,
        Err(e) => {
            row.status = sanitize(format!("error: {}", e));
            return row;
        }
    };

    // Theorem parameter bundle; t2 carries placeholders it never reads.
    let tp = build_params(theorem, c, variant);
    let tp = match tp {
        Ok(tp) => tp,
        Err(e) => {
            row.status = sanitize(format!("error: {}", e));
            return row;
        }
    };

    // Hypothesis flags for |f'| (or |f'|^q), at the row's s (1 for t2).
    let flag_s = s_col.unwrap_or(1.0);
    let power = if theorem == TheoremId::T7 {
        q_col.unwrap_or(1.0)
    } else {
        1.0
    };
    let sampled = ctx.flags(key, &f, power, flag_s);
    row.convex_fprime = Some(sampled.convex);
    row.slog_second = Some(sampled.slog_second);
    row.unit_range = Some(sampled.unit_range);
    match psi_exponent(theorem, &tp)
        .map_err(|e| e.to_string())
        .and_then(|pe| psi_flag(&f, pe).map_err(|e| e.to_string()))
    {
        Ok(psi) => row.psi_le_one = Some(psi),
        Err(e) => {
            row.status = sanitize(format!("error: {}", e));
            return row;
        }
    }

    let gap_alpha = if theorem == TheoremId::Remark1 {
        1.0
    } else {
        c.alpha
    };
    let (lhs, gap_converged) = match ctx.gap(key, &f, gap_alpha) {
        Ok(v) => v,
        Err(e) => {
            row.status = sanitize(format!("error: {}", e));
            return row;
        }
    };

    let rhs = compute_rhs(ctx, &f, c, theorem, &tp);
    match rhs {
        Ok((rhs, rhs_converged)) => {
            row.lhs = Some(lhs);
            row.rhs = Some(rhs);
            row.margin = Some(rhs - lhs);
            row.quad_converged = Some(gap_converged && rhs_converged);
        }
        Err(e) => {
            row.status = sanitize(format!("error: {}", e));
        }
    }
    row
}

fn build_params(
    theorem: TheoremId,
    c: &Coords,
    variant: Option<Variant>,
) -> Result<TheoremParams, String> {
    let variant = variant.unwrap_or(Variant::Corrected);
    let s = c.s.unwrap_or(1.0);
    let mu = c.mu.unwrap_or(0.5);
    let tp = TheoremParams::new(s, mu, variant).map_err(|e| e.to_string())?;
    match theorem {
        TheoremId::T6 => tp
            .with_p(c.p.expect("validated"))
            .map_err(|e| e.to_string()),
        TheoremId::T7 => tp
            .with_q(c.q.expect("validated"))
            .map_err(|e| e.to_string()),
        _ => Ok(tp),
    }
}

fn compute_rhs(
    ctx: &SweepContext,
    f: &FuncSpec,
    c: &Coords,
    theorem: TheoremId,
    tp: &TheoremParams,
) -> Result<(f64, bool), String> {
    let (a, b) = f.domain();
    let make_params = || FracParams::new(a, b, c.alpha).map_err(|e| e.to_string());
    match theorem {
        TheoremId::T2 => Ok((
            thm2_rhs(f, &make_params()?).map_err(|e| e.to_string())?,
            true,
        )),
        TheoremId::T5 => {
            let v = thm5_rhs(f, &make_params()?, tp, &ctx.quad_cfg).map_err(|e| e.to_string())?;
            Ok((v.value, v.quad_converged))
        }
        TheoremId::T6 => Ok((
            thm6_rhs(f, &make_params()?, tp).map_err(|e| e.to_string())?,
            true,
        )),
        TheoremId::T7 => Ok((
            thm7_rhs(f, &make_params()?, tp).map_err(|e| e.to_string())?,
            true,
        )),
        TheoremId::Remark1 => Ok((remark1_rhs(f, a, b, tp).map_err(|e| e.to_string())?, true)),
    }
}

/// Rows that signal a contradiction: all hypotheses true yet the corrected
/// margin is below the noise floor.
pub fn contradiction_rows(rows: &[ReportRow]) -> Vec<&ReportRow> {
    rows.iter().filter(|r| r.is_contradiction()).collect()
}

//! Assembly of one [`BoundRecord`]: gap, bound, and hypothesis flags.

use std::fmt;

use hhfrac::bounds::{
    remark1_rhs, thm2_rhs, thm5_rhs, thm6_rhs, thm7_rhs, BoundRecord, BoundsError, TheoremId,
    TheoremParams,
};
use hhfrac::expr::FuncSpec;
use hhfrac::fracint::{hh_gap, FracError, FracParams};
use hhfrac::hypotheses::{check_convex, check_range_unit, check_slog_second, GridSpec};
use hhfrac::quad::QuadConfig;
use hhfrac::special::{psi_in_unit_range, psi_ratio, PsiArgs};

/// Verification failure, split by what the caller did wrong.
#[derive(Debug, Clone, PartialEq)]
pub enum VerifyError {
    /// Bad arguments: wrong exponents for the theorem, invalid parameters.
    Params(String),
    /// The computation itself failed (evaluation or quadrature).
    Computation(String),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Params(m) => write!(f, "{}", m),
            VerifyError::Computation(m) => write!(f, "{}", m),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<BoundsError> for VerifyError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::InvalidParams { .. } | BoundsError::MissingExponent { .. } => {
                VerifyError::Params(e.to_string())
            }
            other => VerifyError::Computation(other.to_string()),
        }
    }
}

impl From<FracError> for VerifyError {
    fn from(e: FracError) -> Self {
        match e {
            FracError::InvalidParams { .. } | FracError::PointOutOfRange { .. } => {
                VerifyError::Params(e.to_string())
            }
            other => VerifyError::Computation(other.to_string()),
        }
    }
}

/// The four sampled hypothesis verdicts for a bound's base function
/// (|f'| or |f'|^q). A check that aborts, for instance because positivity
/// fails at a sample, records the hypothesis as not established.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypothesisFlags {
    pub convex: bool,
    pub slog_second: bool,
    pub unit_range: bool,
    pub psi_le_one: bool,
}

/// The three sampled verdicts for g = |f'|^power on the domain of `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledFlags {
    pub convex: bool,
    pub slog_second: bool,
    pub unit_range: bool,
}

/// Sample convexity, s-log-convexity (second sense) and unit range for
/// g = |f'|^power.
pub fn sampled_flags(f: &FuncSpec, power: f64, s: f64, grid: &GridSpec) -> SampledFlags {
    let (lo, hi) = f.domain();
    let g = |x: f64| {
        let d = f
            .eval_dual(x)
            .map(|d| d.derivative.abs())
            .unwrap_or(f64::NAN);
        if power == 1.0 {
            d
        } else {
            d.powf(power)
        }
    };
    SampledFlags {
        convex: check_convex(g, (lo, hi), grid)
            .map(|r| r.holds)
            .unwrap_or(false),
        slog_second: check_slog_second(g, s, (lo, hi), grid)
            .map(|r| r.holds)
            .unwrap_or(false),
        unit_range: check_range_unit(g, (lo, hi), grid)
            .map(|r| r.holds)
            .unwrap_or(false),
    }
}

/// The ψ ≤ 1 side condition at the theorem's exponent pair (c, c), on the
/// unpowered |f'| as the bounds state it.
pub fn psi_flag(f: &FuncSpec, psi_exponent: f64) -> Result<bool, VerifyError> {
    let (lo, hi) = f.domain();
    let da = f
        .eval_dual(lo)
        .map_err(|e| VerifyError::Computation(e.to_string()))?
        .derivative
        .abs();
    let db = f
        .eval_dual(hi)
        .map_err(|e| VerifyError::Computation(e.to_string()))?
        .derivative
        .abs();
    if da == 0.0 {
        return Ok(true);
    }
    if db == 0.0 {
        return Ok(false);
    }
    let psi = psi_ratio(
        PsiArgs::new(psi_exponent, psi_exponent, da, db)
            .map_err(|e| VerifyError::Params(e.to_string()))?,
    );
    Ok(psi_in_unit_range(psi))
}

/// Sample the hypotheses for g = |f'|^power on the domain of `f`.
pub fn hypothesis_flags(
    f: &FuncSpec,
    power: f64,
    s: f64,
    psi_exponent: f64,
    grid: &GridSpec,
) -> Result<HypothesisFlags, VerifyError> {
    let sampled = sampled_flags(f, power, s, grid);
    Ok(HypothesisFlags {
        convex: sampled.convex,
        slog_second: sampled.slog_second,
        unit_range: sampled.unit_range,
        psi_le_one: psi_flag(f, psi_exponent)?,
    })
}

/// The ψ exponent a theorem applies: s/η for the Young-split bound and its
/// α = 1 specialization, sq for the Hölder bound, sq/η for the power-mean
/// bound, and 1 for the convexity bound.
pub fn psi_exponent(theorem: TheoremId, tp: &TheoremParams) -> Result<f64, VerifyError> {
    let q = || {
        tp.q.ok_or_else(|| VerifyError::Params(format!("theorem {} requires q", theorem.label())))
    };
    Ok(match theorem {
        TheoremId::T2 => 1.0,
        TheoremId::T5 | TheoremId::Remark1 => tp.s / tp.eta,
        TheoremId::T6 => tp.s * q()?,
        TheoremId::T7 => tp.s * q()? / tp.eta,
    })
}

/// The power applied to |f'| before hypothesis sampling: q for the
/// power-mean bound, 1 otherwise.
pub fn hypothesis_power(theorem: TheoremId, tp: &TheoremParams) -> f64 {
    match theorem {
        TheoremId::T7 => tp.q.unwrap_or(1.0),
        _ => 1.0,
    }
}

/// Compute a fully populated verification record for one configuration.
///
/// The hypothesis flags are sampled for |f'| (or |f'|^q for the power-mean
/// bound); the gap and bound values are computed regardless of the verdicts
/// so sweeps reveal out-of-hypothesis behaviour instead of hiding it.
pub fn verify_theorem(
    f: &FuncSpec,
    p: &FracParams,
    tp: &TheoremParams,
    theorem: TheoremId,
    grid: &GridSpec,
    quad_cfg: &QuadConfig,
) -> Result<BoundRecord, VerifyError> {
    match theorem {
        TheoremId::T6 if tp.p.is_none() => {
            return Err(VerifyError::Params("theorem t6 requires p".into()));
        }
        TheoremId::T7 if tp.q.is_none() => {
            return Err(VerifyError::Params("theorem t7 requires q".into()));
        }
        _ => {}
    }

    let flags = hypothesis_flags(
        f,
        hypothesis_power(theorem, tp),
        tp.s,
        psi_exponent(theorem, tp)?,
        grid,
    )?;

    // remark1 is the α = 1 statement regardless of the sweep coordinate.
    let gap_params = match theorem {
        TheoremId::Remark1 => FracParams::new(p.a(), p.b(), 1.0).map_err(VerifyError::from)?,
        _ => *p,
    };
    let gap = hh_gap(f, &gap_params, quad_cfg)?;

    let (rhs, rhs_converged) = match theorem {
        TheoremId::T2 => (thm2_rhs(f, p)?, true),
        TheoremId::T5 => {
            let b = thm5_rhs(f, p, tp, quad_cfg)?;
            (b.value, b.quad_converged)
        }
        TheoremId::T6 => (thm6_rhs(f, p, tp)?, true),
        TheoremId::T7 => (thm7_rhs(f, p, tp)?, true),
        TheoremId::Remark1 => (remark1_rhs(f, p.a(), p.b(), tp)?, true),
    };

    Ok(BoundRecord {
        theorem,
        variant: tp.variant,
        lhs: gap.value,
        rhs,
        margin: rhs - gap.value,
        convex: flags.convex,
        slog_second: flags.slog_second,
        unit_range: flags.unit_range,
        psi_le_one: flags.psi_le_one,
        quad_converged: gap.converged && rhs_converged,
    })
}

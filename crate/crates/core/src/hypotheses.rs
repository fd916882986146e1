//! Sampling-based checks of the hypotheses the bounds impose on |f'|.
//!
//! Every check here is a falsification search over a uniform grid plus
//! seeded random samples, never a certificate: "holds" means no violation
//! was found at the checked resolution. Reports carry the worst violation
//! and a witness sample when one exists.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Relative tolerance applied to the defining inequalities: below quadrature
/// noise, above rounding noise.
pub const CHECK_TOLERANCE: f64 = 1e-12;

/// Sampling resolution for the hypothesis checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub points_per_axis: usize,
    pub random_pairs: usize,
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            points_per_axis: 33,
            random_pairs: 500,
            seed: 42,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), HypothesisError> {
        if self.points_per_axis < 3 {
            return Err(HypothesisError::InvalidInput {
                detail: format!("points_per_axis must be >= 3, got {}", self.points_per_axis),
            });
        }
        Ok(())
    }
}

/// The sample at which the worst violation occurred. For pointwise checks
/// `y` repeats `x` and `t` is zero; for the first-sense check `t` holds the
/// weight parameter w with α^s = 1-w.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

/// Outcome of one hypothesis check.
///
/// `holds` is equivalent to `worst_violation <= tolerance`, where both refer
/// to the recorded worst sample; a witness is present exactly when the check
/// failed.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    pub property: String,
    pub holds: bool,
    /// Max over samples of LHS - RHS of the defining inequality
    /// (positive means violated), taken at the worst normalized sample.
    pub worst_violation: f64,
    /// The per-sample tolerance at the worst sample.
    pub tolerance: f64,
    pub witness: Option<Witness>,
    pub samples_checked: usize,
}

/// Failure during sampling.
#[derive(Debug, Clone, PartialEq)]
pub enum HypothesisError {
    /// g produced NaN or infinity at a sample.
    NonFinite {
        x: f64,
    },
    /// The check requires strictly positive values and g(x) <= 0.
    NonPositive {
        x: f64,
        value: f64,
    },
    InvalidInput {
        detail: String,
    },
}

impl fmt::Display for HypothesisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypothesisError::NonFinite { x } => {
                write!(f, "function value is not finite at x = {}", x)
            }
            HypothesisError::NonPositive { x, value } => {
                write!(
                    f,
                    "function must be strictly positive, got {} at x = {}",
                    value, x
                )
            }
            HypothesisError::InvalidInput { detail } => write!(f, "invalid input: {}", detail),
        }
    }
}

impl std::error::Error for HypothesisError {}

/// Tracks the worst sample under the normalized violation
/// (LHS - RHS) / (1 + |RHS|), deterministically keeping the earliest
/// maximizer.
struct WorstTracker {
    property: &'static str,
    worst_norm: f64,
    worst_raw: f64,
    worst_tol: f64,
    witness: Witness,
    samples: usize,
}

impl WorstTracker {
    fn new(property: &'static str) -> Self {
        WorstTracker {
            property,
            worst_norm: f64::NEG_INFINITY,
            worst_raw: f64::NEG_INFINITY,
            worst_tol: CHECK_TOLERANCE,
            witness: Witness {
                x: 0.0,
                y: 0.0,
                t: 0.0,
            },
            samples: 0,
        }
    }

    fn record(&mut self, lhs: f64, rhs: f64, witness: Witness) {
        self.samples += 1;
        let norm = (lhs - rhs) / (1.0 + rhs.abs());
        if norm > self.worst_norm {
            self.worst_norm = norm;
            self.worst_raw = lhs - rhs;
            self.worst_tol = CHECK_TOLERANCE * (1.0 + rhs.abs());
            self.witness = witness;
        }
    }

    fn finish(self) -> HypothesisReport {
        let holds = self.worst_norm <= CHECK_TOLERANCE;
        HypothesisReport {
            property: self.property.to_owned(),
            holds,
            worst_violation: self.worst_raw,
            tolerance: self.worst_tol,
            witness: if holds { None } else { Some(self.witness) },
            samples_checked: self.samples,
        }
    }
}

fn axis(interval: (f64, f64), n: usize) -> impl Iterator<Item = f64> + Clone {
    let (lo, hi) = interval;
    let last = (n - 1) as f64;
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / last)
}

fn finite(g: &impl Fn(f64) -> f64, x: f64) -> Result<f64, HypothesisError> {
    let v = g(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(HypothesisError::NonFinite { x })
    }
}

fn positive(g: &impl Fn(f64) -> f64, x: f64) -> Result<f64, HypothesisError> {
    let v = finite(g, x)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(HypothesisError::NonPositive { x, value: v })
    }
}

/// Convexity of `g` on the interval:
/// g(tx + (1-t)y) <= t g(x) + (1-t) g(y) at every sample.
pub fn check_convex(
    g: impl Fn(f64) -> f64,
    interval: (f64, f64),
    grid: &GridSpec,
) -> Result<HypothesisReport, HypothesisError> {
    grid.validate()?;
    let mut tracker = WorstTracker::new("convex");
    let mut visit = |x: f64, y: f64, t: f64| -> Result<(), HypothesisError> {
        let gx = finite(&g, x)?;
        let gy = finite(&g, y)?;
        let mid = t * x + (1.0 - t) * y;
        let lhs = finite(&g, mid)?;
        tracker.record(lhs, t * gx + (1.0 - t) * gy, Witness { x, y, t });
        Ok(())
    };

    let n = grid.points_per_axis;
    let pts: Vec<f64> = axis(interval, n).collect();
    for (i, &x) in pts.iter().enumerate() {
        for &y in &pts[i + 1..] {
            for t in axis((0.0, 1.0), n) {
                visit(x, y, t)?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    for _ in 0..grid.random_pairs {
        let x = rng.gen_range(interval.0..=interval.1);
        let y = rng.gen_range(interval.0..=interval.1);
        let t = rng.gen_range(0.0..=1.0);
        visit(x, y, t)?;
    }
    Ok(tracker.finish())
}

/// s-logarithmic convexity in the second sense:
/// g(tx + (1-t)y) <= g(x)^{t^s} g(y)^{(1-t)^s}. At s = 1 this is ordinary
/// log-convexity. Requires g > 0 at every sample.
pub fn check_slog_second(
    g: impl Fn(f64) -> f64,
    s: f64,
    interval: (f64, f64),
    grid: &GridSpec,
) -> Result<HypothesisReport, HypothesisError> {
    grid.validate()?;
    validate_s(s)?;
    let mut tracker = WorstTracker::new("slog-second");
    let mut visit = |x: f64, y: f64, t: f64| -> Result<(), HypothesisError> {
        let gx = positive(&g, x)?;
        let gy = positive(&g, y)?;
        let lhs = positive(&g, t * x + (1.0 - t) * y)?;
        let rhs = gx.powf(t.powf(s)) * gy.powf((1.0 - t).powf(s));
        tracker.record(lhs, rhs, Witness { x, y, t });
        Ok(())
    };

    let n = grid.points_per_axis;
    let pts: Vec<f64> = axis(interval, n).collect();
    for (i, &x) in pts.iter().enumerate() {
        for &y in &pts[i + 1..] {
            for t in axis((0.0, 1.0), n) {
                visit(x, y, t)?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    for _ in 0..grid.random_pairs {
        let x = rng.gen_range(interval.0..=interval.1);
        let y = rng.gen_range(interval.0..=interval.1);
        let t = rng.gen_range(0.0..=1.0);
        visit(x, y, t)?;
    }
    Ok(tracker.finish())
}

/// s-logarithmic convexity in the first sense:
/// g(αx + βy) <= g(x)^{α^s} g(y)^{β^s} with α^s + β^s = 1. Weights are
/// sampled via α = (1-w)^{1/s} for w on a uniform grid interior to (0, 1).
pub fn check_slog_first(
    g: impl Fn(f64) -> f64,
    s: f64,
    interval: (f64, f64),
    grid: &GridSpec,
) -> Result<HypothesisReport, HypothesisError> {
    grid.validate()?;
    validate_s(s)?;
    let mut tracker = WorstTracker::new("slog-first");
    let mut visit = |x: f64, y: f64, w: f64| -> Result<(), HypothesisError> {
        let gx = positive(&g, x)?;
        let gy = positive(&g, y)?;
        let alpha = (1.0 - w).powf(1.0 / s);
        let beta = w.powf(1.0 / s);
        let lhs = positive(&g, alpha * x + beta * y)?;
        let rhs = gx.powf(1.0 - w) * gy.powf(w);
        tracker.record(lhs, rhs, Witness { x, y, t: w });
        Ok(())
    };

    let n = grid.points_per_axis;
    let pts: Vec<f64> = axis(interval, n).collect();
    let weights: Vec<f64> = (1..=n).map(|k| k as f64 / (n + 1) as f64).collect();
    for (i, &x) in pts.iter().enumerate() {
        for &y in &pts[i + 1..] {
            for &w in &weights {
                visit(x, y, w)?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    for _ in 0..grid.random_pairs {
        let x = rng.gen_range(interval.0..=interval.1);
        let y = rng.gen_range(interval.0..=interval.1);
        let w = rng.gen_range(f64::EPSILON..1.0);
        visit(x, y, w)?;
    }
    Ok(tracker.finish())
}

/// Unit-range condition 0 < g(x) <= 1, the side condition under which the
/// scalar inequality λ^{u^v} <= λ^{uv} applies to λ = g(endpoint).
pub fn check_range_unit(
    g: impl Fn(f64) -> f64,
    interval: (f64, f64),
    grid: &GridSpec,
) -> Result<HypothesisReport, HypothesisError> {
    grid.validate()?;
    let mut tracker = WorstTracker::new("unit-range");
    let mut visit = |x: f64| -> Result<(), HypothesisError> {
        let v = finite(&g, x)?;
        // Positivity failures score at least 1 so they always trip the
        // tolerance; the upper bound contributes v - 1. Recorded against a
        // zero RHS the normalized and raw violations coincide, so holds
        // means exactly 0 < g <= 1 + tolerance everywhere.
        let violation = if v <= 0.0 { 1.0 - v } else { v - 1.0 };
        tracker.record(violation, 0.0, Witness { x, y: x, t: 0.0 });
        Ok(())
    };
    for x in axis(interval, grid.points_per_axis) {
        visit(x)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    for _ in 0..grid.random_pairs {
        visit(rng.gen_range(interval.0..=interval.1))?;
    }
    Ok(tracker.finish())
}

/// The scalar inequality λ^{u^v} <= λ^{uv} for 0 < λ <= 1 and 0 < u, v <= 1.
/// It holds for all valid inputs; exposing it as a check lets the property
/// suite exercise that step in isolation.
pub fn check_lambda_power(lambda: f64, u: f64, v: f64) -> Result<bool, HypothesisError> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(HypothesisError::InvalidInput {
            detail: format!("need 0 < lambda <= 1, got {}", lambda),
        });
    }
    if !(u > 0.0 && u <= 1.0 && v > 0.0 && v <= 1.0) {
        return Err(HypothesisError::InvalidInput {
            detail: format!("need 0 < u, v <= 1, got ({}, {})", u, v),
        });
    }
    let lhs = lambda.powf(u.powf(v));
    let rhs = lambda.powf(u * v);
    Ok(lhs <= rhs || (lhs - rhs) <= 1e-15 * lhs.abs())
}

fn validate_s(s: f64) -> Result<(), HypothesisError> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(HypothesisError::InvalidInput {
            detail: format!("need s in (0, 1], got {}", s),
        });
    }
    Ok(())
}

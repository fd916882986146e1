//! Riemann-Liouville fractional integrals and the Hermite-Hadamard gap.
//!
//! The left operator J_{a+}^α f(x) = (1/Γ(α)) ∫_a^x (x-t)^{α-1} f(t) dt and
//! its right-sided mirror are evaluated through the singularity-removing
//! power-kernel quadrature. [`hh_gap`] is the left-hand side shared by all
//! the bounds: the absolute difference between the endpoint average of `f`
//! and the Γ-normalized symmetric fractional mean.

use std::cell::Cell;
use std::fmt;

use crate::expr::{EvalError, FuncSpec};
use crate::quad::{
    integrate, integrate_power_kernel, QuadConfig, QuadError, QuadResult, SingularEnd,
};
use crate::special::{gamma, SpecialError};

/// The triple (a, b, α) parameterizing the fractional operators.
///
/// Invariants: a < b, α > 0, and a ≥ 0 (the operators are defined on the
/// nonnegative half-line).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracParams {
    a: f64,
    b: f64,
    alpha: f64,
}

impl FracParams {
    pub fn new(a: f64, b: f64, alpha: f64) -> Result<Self, FracError> {
        if !a.is_finite() || !b.is_finite() || !(a < b) {
            return Err(FracError::InvalidParams {
                detail: format!("need finite a < b, got a = {}, b = {}", a, b),
            });
        }
        if a < 0.0 {
            return Err(FracError::InvalidParams {
                detail: format!("need a >= 0, got a = {}", a),
            });
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(FracError::InvalidParams {
                detail: format!("need alpha > 0, got {}", alpha),
            });
        }
        Ok(FracParams { a, b, alpha })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Error from the fractional operators.
#[derive(Debug, Clone, PartialEq)]
pub enum FracError {
    InvalidParams {
        detail: String,
    },
    /// The evaluation point violates the operator's x-range.
    PointOutOfRange {
        x: f64,
        detail: String,
    },
    Eval(EvalError),
    Quad(QuadError),
    Special(SpecialError),
}

impl fmt::Display for FracError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FracError::InvalidParams { detail } => write!(f, "invalid parameters: {}", detail),
            FracError::PointOutOfRange { x, detail } => {
                write!(f, "evaluation point x = {} out of range: {}", x, detail)
            }
            FracError::Eval(e) => write!(f, "{}", e),
            FracError::Quad(e) => write!(f, "{}", e),
            FracError::Special(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for FracError {}

impl From<QuadError> for FracError {
    fn from(e: QuadError) -> Self {
        FracError::Quad(e)
    }
}

impl From<SpecialError> for FracError {
    fn from(e: SpecialError) -> Self {
        FracError::Special(e)
    }
}

/// Routes `FuncSpec` evaluation errors through the plain-f64 quadrature
/// interface: the closure reports NaN, the first underlying error is kept,
/// and the quadrature abort is translated back afterwards.
struct CapturedEval<'f> {
    f: &'f FuncSpec,
    err: Cell<Option<EvalError>>,
    dual: bool,
}

impl<'f> CapturedEval<'f> {
    fn values(f: &'f FuncSpec) -> Self {
        CapturedEval {
            f,
            err: Cell::new(None),
            dual: false,
        }
    }

    fn derivatives(f: &'f FuncSpec) -> Self {
        CapturedEval {
            f,
            err: Cell::new(None),
            dual: true,
        }
    }

    fn get(&self, x: f64) -> f64 {
        let r = if self.dual {
            self.f.eval_dual(x).map(|d| d.derivative)
        } else {
            self.f.eval(x)
        };
        match r {
            Ok(v) => v,
            Err(e) => {
                // keep the first error
                let first = self.err.take().or(Some(e));
                self.err.set(first);
                f64::NAN
            }
        }
    }

    fn rewrap(&self, e: QuadError) -> FracError {
        match self.err.take() {
            Some(eval_err) => FracError::Eval(eval_err),
            None => FracError::Quad(e),
        }
    }
}

/// Left-sided operator J_{a+}^α f evaluated at `x` ∈ (a, b].
pub fn j_plus(
    f: &FuncSpec,
    p: &FracParams,
    x: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult, FracError> {
    if !(x > p.a && x <= p.b) {
        return Err(FracError::PointOutOfRange {
            x,
            detail: format!("need a < x <= b = ({}, {}]", p.a, p.b),
        });
    }
    let norm = 1.0 / gamma(p.alpha)?;
    let cap = CapturedEval::values(f);
    let r = integrate_power_kernel(|t| cap.get(t), p.a, x, p.alpha, SingularEnd::Upper, cfg)
        .map_err(|e| cap.rewrap(e))?;
    Ok(r.scaled(norm))
}

/// Right-sided operator J_{b-}^α f evaluated at `x` ∈ [a, b).
pub fn j_minus(
    f: &FuncSpec,
    p: &FracParams,
    x: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult, FracError> {
    if !(x >= p.a && x < p.b) {
        return Err(FracError::PointOutOfRange {
            x,
            detail: format!("need a <= x < b = [{}, {})", p.a, p.b),
        });
    }
    let norm = 1.0 / gamma(p.alpha)?;
    let cap = CapturedEval::values(f);
    let r = integrate_power_kernel(|t| cap.get(t), x, p.b, p.alpha, SingularEnd::Lower, cfg)
        .map_err(|e| cap.rewrap(e))?;
    Ok(r.scaled(norm))
}

/// The signed Hermite-Hadamard gap
/// (f(a)+f(b))/2 - Γ(α+1)/(2(b-a)^α) [J_{b-}^α f(a) + J_{a+}^α f(b)],
/// without the absolute value. This is the quantity the integral identity
/// equates to [`lemma1_rhs`].
pub fn signed_gap(f: &FuncSpec, p: &FracParams, cfg: &QuadConfig) -> Result<QuadResult, FracError> {
    let fa = f.eval(p.a).map_err(FracError::Eval)?;
    let fb = f.eval(p.b).map_err(FracError::Eval)?;
    let jm = j_minus(f, p, p.a, cfg)?;
    let jp = j_plus(f, p, p.b, cfg)?;
    let scale = gamma(p.alpha + 1.0)? / (2.0 * (p.b - p.a).powf(p.alpha));
    Ok(QuadResult {
        value: 0.5 * (fa + fb) - scale * (jm.value + jp.value),
        error_estimate: scale * (jm.error_estimate + jp.error_estimate),
        subdivisions: jm.subdivisions + jp.subdivisions,
        converged: jm.converged && jp.converged,
    })
}

/// |signed gap|: the left-hand side shared by every bound.
pub fn hh_gap(f: &FuncSpec, p: &FracParams, cfg: &QuadConfig) -> Result<QuadResult, FracError> {
    let r = signed_gap(f, p, cfg)?;
    Ok(QuadResult {
        value: r.value.abs(),
        ..r
    })
}

/// The integral side of the gap identity:
/// ((b-a)/2) ∫₀¹ [(1-t)^α - t^α] f'(ta + (1-t)b) dt, signed.
pub fn lemma1_rhs(f: &FuncSpec, p: &FracParams, cfg: &QuadConfig) -> Result<QuadResult, FracError> {
    let (a, b, alpha) = (p.a, p.b, p.alpha);
    let cap = CapturedEval::derivatives(f);
    let integrand = |t: f64| {
        let weight = (1.0 - t).powf(alpha) - t.powf(alpha);
        weight * cap.get(t * a + (1.0 - t) * b)
    };
    let r = integrate(integrand, 0.0, 1.0, cfg).map_err(|e| cap.rewrap(e))?;
    Ok(r.scaled(0.5 * (b - a)))
}

/// The classical Hadamard triple for `f` on `[a, b]`:
/// the midpoint value, the integral mean, and the endpoint average.
/// For convex `f` these are nondecreasing left to right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HadamardTriple {
    pub midpoint: f64,
    pub mean: f64,
    pub endpoints: f64,
    pub converged: bool,
}

pub fn classical_hadamard_triple(
    f: &FuncSpec,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<HadamardTriple, FracError> {
    if !(a < b) {
        return Err(FracError::InvalidParams {
            detail: format!("need a < b, got ({}, {})", a, b),
        });
    }
    let midpoint = f.eval(0.5 * (a + b)).map_err(FracError::Eval)?;
    let fa = f.eval(a).map_err(FracError::Eval)?;
    let fb = f.eval(b).map_err(FracError::Eval)?;
    let cap = CapturedEval::values(f);
    let integral = integrate(|t| cap.get(t), a, b, cfg).map_err(|e| cap.rewrap(e))?;
    Ok(HadamardTriple {
        midpoint,
        mean: integral.value / (b - a),
        endpoints: 0.5 * (fa + fb),
        converged: integral.converged,
    })
}

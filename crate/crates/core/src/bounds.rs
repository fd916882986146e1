//! Right-hand sides of the fractional Hermite-Hadamard bounds for functions
//! whose derivative magnitude is s-logarithmically convex.
//!
//! Every ψ-bearing bound comes in two variants. `Printed` is the commonly
//! stated closed form, in which the geometric-interpolant integral
//! ∫₀¹ |f'(a)|^{ct} |f'(b)|^{c(1-t)} dt is written as |f'(b)|^c ψ(c, c).
//! `Corrected` applies the mean factor Ψ on top, |f'(b)|^c Ψ(ψ(c, c)), which
//! is what that integral actually evaluates to ([`slog_integral`] computes
//! it exactly; a quadrature oracle in the test suite adjudicates). Only the
//! corrected variant is expected to be a sound upper bound when the
//! hypotheses hold.

use std::fmt;

use crate::expr::{EvalError, FuncSpec};
use crate::fracint::FracParams;
use crate::quad::{integrate, QuadConfig, QuadError};
use crate::special::{psi_ratio, PsiArgs, SpecialError};

/// Which reading of a ψ-bearing bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Printed,
    Corrected,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::Printed => "printed",
            Variant::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Identifier of a bound in the verified family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    T2,
    T5,
    T6,
    T7,
    Remark1,
}

impl TheoremId {
    pub fn label(self) -> &'static str {
        match self {
            TheoremId::T2 => "t2",
            TheoremId::T5 => "t5",
            TheoremId::T6 => "t6",
            TheoremId::T7 => "t7",
            TheoremId::Remark1 => "remark1",
        }
    }

    pub const ALL: [TheoremId; 5] = [
        TheoremId::T2,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::Remark1,
    ];
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Exponent bundle shared by the bounds: the convexity order `s`, the Young
/// weights `mu + eta = 1`, and optionally the Hölder pair `1/p + 1/q = 1` or
/// the power-mean exponent `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremParams {
    pub s: f64,
    pub mu: f64,
    pub eta: f64,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub variant: Variant,
}

const WEIGHT_TOL: f64 = 1e-14;

impl TheoremParams {
    /// Params with `eta` derived as `1 - mu` and no p/q.
    pub fn new(s: f64, mu: f64, variant: Variant) -> Result<Self, BoundsError> {
        let tp = TheoremParams {
            s,
            mu,
            eta: 1.0 - mu,
            p: None,
            q: None,
            variant,
        };
        tp.validate()?;
        Ok(tp)
    }

    /// Sets the Hölder exponent `p`, deriving the conjugate `q`.
    pub fn with_p(mut self, p: f64) -> Result<Self, BoundsError> {
        self.p = Some(p);
        self.q = Some(p / (p - 1.0));
        self.validate()?;
        Ok(self)
    }

    /// Sets the power-mean exponent `q`.
    pub fn with_q(mut self, q: f64) -> Result<Self, BoundsError> {
        self.q = Some(q);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), BoundsError> {
        if !(self.s > 0.0 && self.s <= 1.0) {
            return Err(BoundsError::InvalidParams {
                detail: format!("need s in (0, 1], got {}", self.s),
            });
        }
        if !(self.mu > 0.0) || !(self.eta > 0.0) {
            return Err(BoundsError::InvalidParams {
                detail: format!("need mu, eta > 0, got ({}, {})", self.mu, self.eta),
            });
        }
        if (self.mu + self.eta - 1.0).abs() > WEIGHT_TOL {
            return Err(BoundsError::InvalidParams {
                detail: format!("need mu + eta = 1, got {} + {}", self.mu, self.eta),
            });
        }
        if let Some(p) = self.p {
            if !(p > 1.0) {
                return Err(BoundsError::InvalidParams {
                    detail: format!("need p > 1, got {}", p),
                });
            }
            let q = self.q.ok_or(BoundsError::MissingExponent { which: "q" })?;
            if (1.0 / p + 1.0 / q - 1.0).abs() > WEIGHT_TOL {
                return Err(BoundsError::InvalidParams {
                    detail: format!("need 1/p + 1/q = 1, got p = {}, q = {}", p, q),
                });
            }
        }
        if let Some(q) = self.q {
            if !(q >= 1.0) {
                return Err(BoundsError::InvalidParams {
                    detail: format!("need q >= 1, got {}", q),
                });
            }
        }
        Ok(())
    }
}

/// One verification outcome: the gap, the bound, and the hypothesis flags
/// the verdict is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRecord {
    pub theorem: TheoremId,
    pub variant: Variant,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs - lhs; nonnegative means the inequality held.
    pub margin: f64,
    pub convex: bool,
    pub slog_second: bool,
    pub unit_range: bool,
    pub psi_le_one: bool,
    pub quad_converged: bool,
}

/// A bound value plus whether every quadrature inside it converged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundValue {
    pub value: f64,
    pub quad_converged: bool,
}

impl BoundValue {
    fn exact(value: f64) -> Self {
        BoundValue {
            value,
            quad_converged: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundsError {
    InvalidParams {
        detail: String,
    },
    MissingExponent {
        which: &'static str,
    },
    /// |f'(b)| = 0 with |f'(a)| > 0 leaves ψ undefined.
    ZeroEndpointDerivative,
    Eval(EvalError),
    Quad(QuadError),
    Special(SpecialError),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::InvalidParams { detail } => write!(f, "invalid parameters: {}", detail),
            BoundsError::MissingExponent { which } => {
                write!(f, "missing exponent '{}' for this bound", which)
            }
            BoundsError::ZeroEndpointDerivative => {
                write!(f, "|f'(b)| = 0 with |f'(a)| > 0: psi is undefined")
            }
            BoundsError::Eval(e) => write!(f, "{}", e),
            BoundsError::Quad(e) => write!(f, "{}", e),
            BoundsError::Special(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for BoundsError {}

impl From<QuadError> for BoundsError {
    fn from(e: QuadError) -> Self {
        BoundsError::Quad(e)
    }
}

impl From<SpecialError> for BoundsError {
    fn from(e: SpecialError) -> Self {
        BoundsError::Special(e)
    }
}

/// |f'| at the interval endpoints.
pub fn endpoint_derivs(f: &FuncSpec, a: f64, b: f64) -> Result<(f64, f64), BoundsError> {
    let da = f.eval_dual(a).map_err(BoundsError::Eval)?.derivative.abs();
    let db = f.eval_dual(b).map_err(BoundsError::Eval)?.derivative.abs();
    Ok((da, db))
}

/// The convex-|f'| bound:
/// (b-a)/(2(α+1)) (1 - 2^{-α}) (|f'(a)| + |f'(b)|).
pub fn thm2_rhs(f: &FuncSpec, p: &FracParams) -> Result<f64, BoundsError> {
    let (da, db) = endpoint_derivs(f, p.a(), p.b())?;
    let alpha = p.alpha();
    Ok((p.b() - p.a()) / (2.0 * (alpha + 1.0)) * (1.0 - 2f64.powf(-alpha)) * (da + db))
}

/// Closed forms of the kernel sub-integrals used by the bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedKind {
    /// ∫₀¹ |(1-t)^α - t^α| dt = 2/(α+1) (1 - 2^{-α})
    AbsDiff,
    /// ∫₀¹ |1-2t|^{αp} dt = 1/(αp + 1)
    Holder { p: f64 },
    /// μ ∫₀¹ |1-2t|^{α/μ} dt = μ²/(α+μ)
    Young { mu: f64 },
}

pub fn closed_constant(kind: ClosedKind, alpha: f64) -> Result<f64, BoundsError> {
    if !(alpha > 0.0) {
        return Err(BoundsError::InvalidParams {
            detail: format!("need alpha > 0, got {}", alpha),
        });
    }
    match kind {
        ClosedKind::AbsDiff => Ok(2.0 / (alpha + 1.0) * (1.0 - 2f64.powf(-alpha))),
        ClosedKind::Holder { p } => {
            if !(p > 0.0) {
                return Err(BoundsError::InvalidParams {
                    detail: format!("need p > 0, got {}", p),
                });
            }
            Ok(1.0 / (alpha * p + 1.0))
        }
        ClosedKind::Young { mu } => {
            if !(mu > 0.0) {
                return Err(BoundsError::InvalidParams {
                    detail: format!("need mu > 0, got {}", mu),
                });
            }
            Ok(mu * mu / (alpha + mu))
        }
    }
}

/// The exact value of ∫₀¹ da^{ct} db^{c(1-t)} dt, i.e. db^c Ψ(ψ(c, c)).
///
/// Evaluated in log space so extreme endpoint-derivative ratios neither
/// underflow nor overflow spuriously; da = 0 gives 0.
pub fn slog_integral(da: f64, db: f64, c: f64) -> Result<f64, BoundsError> {
    if !(da >= 0.0) || !(db > 0.0) || !(c > 0.0) {
        return Err(BoundsError::InvalidParams {
            detail: format!("need da >= 0, db > 0, c > 0, got ({}, {}, {})", da, db, c),
        });
    }
    if da == 0.0 {
        return Ok(0.0);
    }
    let ln_psi = c * (da.ln() - db.ln());
    if ln_psi.abs() < 1e-4 {
        // db^c Ψ(1+ε) with the short series for the removable singularity.
        let eps = ln_psi.exp_m1();
        Ok(db.powf(c) * (1.0 + eps * (0.5 + eps * (-1.0 / 12.0 + eps / 24.0))))
    } else {
        // db^c (ψ-1)/ln ψ, with the powers kept separate.
        Ok((da.powf(c) - db.powf(c)) / ln_psi)
    }
}

/// The geometric-interpolant factor of a bound: printed ψ form or corrected
/// Ψ∘ψ form, with exponent pair (c, c).
fn interpolant_term(da: f64, db: f64, c: f64, variant: Variant) -> Result<f64, BoundsError> {
    match variant {
        Variant::Printed => {
            let psi = psi_ratio(PsiArgs::new(c, c, da, db)?);
            Ok(db.powf(c) * psi)
        }
        Variant::Corrected => slog_integral(da, db, c),
    }
}

/// Whether both endpoint derivatives vanish (the degenerate all-zero path:
/// gap, bound and margin are all zero).
fn degenerate(da: f64, db: f64) -> Result<bool, BoundsError> {
    if db == 0.0 {
        if da == 0.0 {
            return Ok(true);
        }
        return Err(BoundsError::ZeroEndpointDerivative);
    }
    Ok(false)
}

/// The Young-split bound:
/// (b-a)/2 [ ∫₀^{1/2} μ((1-t)^α - t^α)^{1/μ} dt
///         + ∫_{1/2}^1 μ(t^α - (1-t)^α)^{1/μ} dt
///         + η |f'(b)|^{s/η} {ψ | Ψ∘ψ}(s/η, s/η) ].
/// The two kernel integrals have no closed form for general α, μ and are
/// computed by quadrature, already split at the kink t = 1/2.
pub fn thm5_rhs(
    f: &FuncSpec,
    p: &FracParams,
    tp: &TheoremParams,
    cfg: &QuadConfig,
) -> Result<BoundValue, BoundsError> {
    tp.validate()?;
    let (da, db) = endpoint_derivs(f, p.a(), p.b())?;
    if degenerate(da, db)? {
        return Ok(BoundValue::exact(0.0));
    }
    let alpha = p.alpha();
    let (mu, eta) = (tp.mu, tp.eta);
    let inv_mu = 1.0 / mu;
    let i1 = integrate(
        |t| mu * ((1.0 - t).powf(alpha) - t.powf(alpha)).powf(inv_mu),
        0.0,
        0.5,
        cfg,
    )?;
    let i2 = integrate(
        |t| mu * (t.powf(alpha) - (1.0 - t).powf(alpha)).powf(inv_mu),
        0.5,
        1.0,
        cfg,
    )?;
    let term = interpolant_term(da, db, tp.s / eta, tp.variant)?;
    Ok(BoundValue {
        value: 0.5 * (p.b() - p.a()) * (i1.value + i2.value + eta * term),
        quad_converged: i1.converged && i2.converged,
    })
}

/// The α = 1 specialization of [`thm5_rhs`]: the two kernel integrals
/// collapse to the closed form μ²/(μ+1).
pub fn remark1_rhs(f: &FuncSpec, a: f64, b: f64, tp: &TheoremParams) -> Result<f64, BoundsError> {
    tp.validate()?;
    if !(a < b) {
        return Err(BoundsError::InvalidParams {
            detail: format!("need a < b, got ({}, {})", a, b),
        });
    }
    let (da, db) = endpoint_derivs(f, a, b)?;
    if degenerate(da, db)? {
        return Ok(0.0);
    }
    let young = tp.mu * tp.mu / (tp.mu + 1.0);
    let term = interpolant_term(da, db, tp.s / tp.eta, tp.variant)?;
    Ok(0.5 * (b - a) * (young + tp.eta * term))
}

/// The Hölder bound:
/// (b-a)/(2(αp+1)^{1/p}) · [|f'(b)|^s ψ(sq, sq)^{1/q}  (printed)
///                         | (|f'(b)|^{sq} Ψ(ψ(sq, sq)))^{1/q} (corrected)].
pub fn thm6_rhs(f: &FuncSpec, p: &FracParams, tp: &TheoremParams) -> Result<f64, BoundsError> {
    tp.validate()?;
    let holder_p = tp.p.ok_or(BoundsError::MissingExponent { which: "p" })?;
    let q = tp.q.ok_or(BoundsError::MissingExponent { which: "q" })?;
    let (da, db) = endpoint_derivs(f, p.a(), p.b())?;
    if degenerate(da, db)? {
        return Ok(0.0);
    }
    let alpha = p.alpha();
    let prefactor = (p.b() - p.a()) / (2.0 * (alpha * holder_p + 1.0).powf(1.0 / holder_p));
    let value = match tp.variant {
        Variant::Printed => {
            let psi = psi_ratio(PsiArgs::new(tp.s * q, tp.s * q, da, db)?);
            prefactor * db.powf(tp.s) * psi.powf(1.0 / q)
        }
        Variant::Corrected => prefactor * slog_integral(da, db, tp.s * q)?.powf(1.0 / q),
    };
    Ok(value)
}

/// The power-mean bound:
/// (b-a)/2^{(q-(1-α)(q-1))/q} ((2^α-1)/(α+1))^{1-1/q}
///   (μ²/(α+μ) + η |f'(b)|^{sq/η} {ψ | Ψ∘ψ}(sq/η, sq/η))^{1/q}.
/// The power-of-two prefactor is algebraically equal to
/// (b-a)/2 (2/(α+1)(1-2^{-α}))^{1-1/q}.
pub fn thm7_rhs(f: &FuncSpec, p: &FracParams, tp: &TheoremParams) -> Result<f64, BoundsError> {
    tp.validate()?;
    let q = tp.q.ok_or(BoundsError::MissingExponent { which: "q" })?;
    let (da, db) = endpoint_derivs(f, p.a(), p.b())?;
    if degenerate(da, db)? {
        return Ok(0.0);
    }
    let alpha = p.alpha();
    let prefactor = thm7_prefactor(p.b() - p.a(), alpha, q);
    let young = tp.mu * tp.mu / (alpha + tp.mu);
    let term = interpolant_term(da, db, tp.s * q / tp.eta, tp.variant)?;
    Ok(prefactor * (young + tp.eta * term).powf(1.0 / q))
}

/// The power-of-two form of the power-mean prefactor, as stated.
pub fn thm7_prefactor(width: f64, alpha: f64, q: f64) -> f64 {
    let exponent = (q - (1.0 - alpha) * (q - 1.0)) / q;
    width / 2f64.powf(exponent) * ((2f64.powf(alpha) - 1.0) / (alpha + 1.0)).powf(1.0 - 1.0 / q)
}

/// The same prefactor via the kernel mass: (b-a)/2 (2/(α+1)(1-2^{-α}))^{1-1/q}.
pub fn thm7_prefactor_via_mass(width: f64, alpha: f64, q: f64) -> f64 {
    let mass = 2.0 / (alpha + 1.0) * (1.0 - 2f64.powf(-alpha));
    width / 2.0 * mass.powf(1.0 - 1.0 / q)
}

/// Self-test of the Young-type split mn <= μ m^{1/μ} + η n^{1/η} for
/// μ + η = 1; must hold for all m, n >= 0.
pub fn young_split(m: f64, n: f64, mu: f64, eta: f64) -> Result<bool, BoundsError> {
    if !(m >= 0.0) || !(n >= 0.0) {
        return Err(BoundsError::InvalidParams {
            detail: format!("need m, n >= 0, got ({}, {})", m, n),
        });
    }
    if !(mu > 0.0) || !(eta > 0.0) || (mu + eta - 1.0).abs() > WEIGHT_TOL {
        return Err(BoundsError::InvalidParams {
            detail: format!("need mu, eta > 0 with mu + eta = 1, got ({}, {})", mu, eta),
        });
    }
    let lhs = m * n;
    let rhs = mu * m.powf(1.0 / mu) + eta * n.powf(1.0 / eta);
    Ok(lhs <= rhs + 1e-12 * (1.0 + rhs))
}

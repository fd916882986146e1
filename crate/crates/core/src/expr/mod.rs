//! Parsing and evaluation of user-supplied scalar functions of `x`.
//!
//! Function text is parsed into an immutable [`ExprNode`] tree and evaluated
//! either plainly ([`FuncSpec::eval`]) or with an exact first derivative via
//! dual numbers ([`FuncSpec::eval_dual`]). There is no simplification, no
//! symbolic differentiation, and only the single variable `x`.
//!
//! ```
//! use hhfrac::expr::FuncSpec;
//!
//! let f = FuncSpec::new("x^2 + sin(x)", 0.0, 2.0)?;
//! let d = f.eval_dual(1.0)?;
//! assert!((d.value - (1.0 + 1f64.sin())).abs() < 1e-15);
//! assert!((d.derivative - (2.0 + 1f64.cos())).abs() < 1e-15);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

mod ast;
mod dual;
mod eval;
mod parse;

use std::fmt;

pub use ast::{print, BinOp, ExprNode, Func};
pub use dual::DualValue;
pub use eval::EvalError;
pub use parse::{parse, ParseError};

/// Grid size used to validate finiteness of a new [`FuncSpec`].
const VALIDATION_GRID: usize = 257;

/// Construction failure for [`FuncSpec`].
#[derive(Debug, Clone, PartialEq)]
pub enum FuncSpecError {
    Parse(ParseError),
    /// Evaluation failed at a validation grid point.
    Eval {
        x: f64,
        source: EvalError,
    },
    /// Evaluation produced a non-finite value at a validation grid point.
    NonFinite {
        x: f64,
    },
    /// The domain interval must satisfy `lo < hi`.
    InvalidDomain {
        lo: f64,
        hi: f64,
    },
}

impl fmt::Display for FuncSpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuncSpecError::Parse(e) => write!(f, "{}", e),
            FuncSpecError::Eval { x, source } => {
                write!(f, "evaluation failed at grid point x = {}: {}", x, source)
            }
            FuncSpecError::NonFinite { x } => {
                write!(f, "non-finite value at grid point x = {}", x)
            }
            FuncSpecError::InvalidDomain { lo, hi } => {
                write!(f, "invalid domain [{}, {}]: need lo < hi", lo, hi)
            }
        }
    }
}

impl std::error::Error for FuncSpecError {}

/// A parsed, differentiable scalar function of one variable on a closed
/// interval.
///
/// Construction parses the source text and evaluates the function on a
/// 257-point grid of the domain, rejecting any specification that is not
/// finite everywhere on that grid. Instances are immutable and safe to share
/// across threads.
#[derive(Debug, Clone)]
pub struct FuncSpec {
    source: String,
    root: ExprNode,
    lo: f64,
    hi: f64,
}

impl FuncSpec {
    /// Parse `text` and validate it on `[lo, hi]`.
    pub fn new(text: &str, lo: f64, hi: f64) -> Result<Self, FuncSpecError> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(FuncSpecError::InvalidDomain { lo, hi });
        }
        let root = parse(text).map_err(FuncSpecError::Parse)?;
        let spec = FuncSpec {
            source: text.to_owned(),
            root,
            lo,
            hi,
        };
        for i in 0..VALIDATION_GRID {
            let t = i as f64 / (VALIDATION_GRID - 1) as f64;
            let x = lo + t * (hi - lo);
            let v = spec
                .eval(x)
                .map_err(|source| FuncSpecError::Eval { x, source })?;
            if !v.is_finite() {
                return Err(FuncSpecError::NonFinite { x });
            }
        }
        Ok(spec)
    }

    /// The original function text.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// The validated domain `[lo, hi]`.
    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// The parsed expression tree.
    pub fn root(&self) -> &ExprNode {
        &self.root
    }

    /// Evaluate `f(x)` by structural recursion.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        eval::eval_node(&self.root, x)
    }

    /// Evaluate `(f(x), f'(x))`, seeding `x` with unit dual part. The
    /// `value` component equals [`FuncSpec::eval`] bit-for-bit.
    pub fn eval_dual(&self, x: f64) -> Result<DualValue, EvalError> {
        eval::eval_node(&self.root, DualValue::variable(x))
    }

    /// `|f'(x)|`, the quantity the inequality hypotheses constrain.
    pub fn deriv_abs(&self, x: f64) -> Result<f64, EvalError> {
        Ok(self.eval_dual(x)?.derivative.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_validates_on_grid() {
        assert!(FuncSpec::new("exp(x/2)", 0.0, 1.0).is_ok());
        // ln hits a domain error inside [-1, 1].
        assert!(matches!(
            FuncSpec::new("ln(x)", -1.0, 1.0),
            Err(FuncSpecError::Eval { .. })
        ));
        // 1/x is fine on [0.5, 1] but blows up at a grid point of [0, 1].
        assert!(FuncSpec::new("1/x", 0.5, 1.0).is_ok());
        assert!(FuncSpec::new("1/x", 0.0, 1.0).is_err());
        assert!(matches!(
            FuncSpec::new("x", 1.0, 1.0),
            Err(FuncSpecError::InvalidDomain { .. })
        ));
    }

    #[test]
    fn eval_and_dual_agree() {
        let f = FuncSpec::new("x^3+1", 0.0, 1.0).unwrap();
        let d = f.eval_dual(0.5).unwrap();
        assert_eq!(f.eval(0.5).unwrap(), d.value);
        assert_eq!(d.derivative, 0.75);
    }
}

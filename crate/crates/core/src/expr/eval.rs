//! Evaluation of expression trees, plain and dual.
//!
//! Both evaluation modes share one generic recursion, so the plain value and
//! the `value` component of a dual evaluation are bit-for-bit identical.

use std::fmt;

use super::ast::{print, BinOp, ExprNode, Func};
use super::dual::DualValue;

/// Runtime evaluation failure, carrying the offending subexpression text.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    /// ln/sqrt of a negative argument, division by zero, or an invalid
    /// power base.
    Domain { expr: String, detail: String },
    /// `abs` has no derivative at argument zero.
    NonDifferentiable { expr: String },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Domain { expr, detail } => {
                write!(f, "domain error in '{}': {}", expr, detail)
            }
            EvalError::NonDifferentiable { expr } => {
                write!(f, "'{}' is not differentiable at argument 0", expr)
            }
        }
    }
}

impl std::error::Error for EvalError {}

/// Scalar shared by plain and dual evaluation. The dual implementation must
/// compute its primal component with the identical f64 operations.
pub(crate) trait Scalar: Copy {
    const CHECK_ABS_KINK: bool;
    fn constant(c: f64) -> Self;
    fn primal(self) -> f64;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn div(self, rhs: Self) -> Self;
    fn neg(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn pow(self, exponent: Self) -> Self;
}

impl Scalar for f64 {
    const CHECK_ABS_KINK: bool = false;
    fn constant(c: f64) -> Self {
        c
    }
    fn primal(self) -> f64 {
        self
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn mul(self, rhs: Self) -> Self {
        self * rhs
    }
    fn div(self, rhs: Self) -> Self {
        self / rhs
    }
    fn neg(self) -> Self {
        -self
    }
    fn exp(self) -> Self {
        self.exp()
    }
    fn ln(self) -> Self {
        self.ln()
    }
    fn sin(self) -> Self {
        self.sin()
    }
    fn cos(self) -> Self {
        self.cos()
    }
    fn sqrt(self) -> Self {
        self.sqrt()
    }
    fn abs(self) -> Self {
        self.abs()
    }
    fn pow(self, exponent: Self) -> Self {
        self.powf(exponent)
    }
}

impl Scalar for DualValue {
    const CHECK_ABS_KINK: bool = true;
    fn constant(c: f64) -> Self {
        DualValue::constant(c)
    }
    fn primal(self) -> f64 {
        self.value
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn mul(self, rhs: Self) -> Self {
        self * rhs
    }
    fn div(self, rhs: Self) -> Self {
        self / rhs
    }
    fn neg(self) -> Self {
        -self
    }
    fn exp(self) -> Self {
        DualValue::exp(self)
    }
    fn ln(self) -> Self {
        DualValue::ln(self)
    }
    fn sin(self) -> Self {
        DualValue::sin(self)
    }
    fn cos(self) -> Self {
        DualValue::cos(self)
    }
    fn sqrt(self) -> Self {
        DualValue::sqrt(self)
    }
    fn abs(self) -> Self {
        DualValue {
            value: self.value.abs(),
            derivative: if self.value < 0.0 {
                -self.derivative
            } else {
                self.derivative
            },
        }
    }
    fn pow(self, exponent: Self) -> Self {
        DualValue::pow(self, exponent)
    }
}

/// Maximum |n| for the exact repeated-multiplication power path. A literal
/// integer exponent beyond this falls back to `powf`, which needs a
/// positive base.
const MAX_EXACT_INT_POW: i64 = 16;

/// A literal integer exponent (`Const` or `Neg(Const)`), when in range for
/// the repeated-multiplication path. Keying on the syntax rather than the
/// runtime value keeps plain and dual evaluation on the same path.
fn literal_int_exponent(node: &ExprNode) -> Option<i64> {
    let (sign, c) = match node {
        ExprNode::Const(c) => (1, *c),
        ExprNode::Neg(inner) => match inner.as_ref() {
            ExprNode::Const(c) => (-1, *c),
            _ => return None,
        },
        _ => return None,
    };
    if c.fract() == 0.0 && c.abs() <= MAX_EXACT_INT_POW as f64 {
        Some(sign * c as i64)
    } else {
        None
    }
}

fn domain_error(node: &ExprNode, detail: impl Into<String>) -> EvalError {
    EvalError::Domain {
        expr: print(node),
        detail: detail.into(),
    }
}

pub(crate) fn eval_node<T: Scalar>(node: &ExprNode, x: T) -> Result<T, EvalError> {
    match node {
        ExprNode::Const(c) => Ok(T::constant(*c)),
        ExprNode::Var => Ok(x),
        ExprNode::Neg(inner) => Ok(eval_node(inner, x)?.neg()),
        ExprNode::Bin(op, lhs, rhs) => {
            let a = eval_node(lhs, x)?;
            match op {
                BinOp::Add => Ok(a.add(eval_node(rhs, x)?)),
                BinOp::Sub => Ok(a.sub(eval_node(rhs, x)?)),
                BinOp::Mul => Ok(a.mul(eval_node(rhs, x)?)),
                BinOp::Div => {
                    let b = eval_node(rhs, x)?;
                    if b.primal() == 0.0 {
                        return Err(domain_error(node, "division by zero"));
                    }
                    Ok(a.div(b))
                }
                BinOp::Pow => eval_pow(node, a, rhs, x),
            }
        }
        ExprNode::Call(func, arg) => {
            let a = eval_node(arg, x)?;
            match func {
                Func::Exp => Ok(a.exp()),
                Func::Ln => {
                    if a.primal() <= 0.0 {
                        return Err(domain_error(node, "ln of a non-positive value"));
                    }
                    Ok(a.ln())
                }
                Func::Sin => Ok(a.sin()),
                Func::Cos => Ok(a.cos()),
                Func::Sqrt => {
                    if a.primal() < 0.0 {
                        return Err(domain_error(node, "sqrt of a negative value"));
                    }
                    Ok(a.sqrt())
                }
                Func::Abs => {
                    if T::CHECK_ABS_KINK && a.primal() == 0.0 {
                        return Err(EvalError::NonDifferentiable { expr: print(node) });
                    }
                    Ok(a.abs())
                }
            }
        }
    }
}

fn eval_pow<T: Scalar>(
    node: &ExprNode,
    base: T,
    exp_node: &ExprNode,
    x: T,
) -> Result<T, EvalError> {
    if let Some(n) = literal_int_exponent(exp_node) {
        let mut acc = T::constant(1.0);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(base);
        }
        if n < 0 {
            if acc.primal() == 0.0 {
                return Err(domain_error(node, "zero base with negative exponent"));
            }
            acc = T::constant(1.0).div(acc);
        }
        return Ok(acc);
    }
    let exponent = eval_node(exp_node, x)?;
    if base.primal() <= 0.0 {
        return Err(domain_error(
            node,
            "non-positive base with non-integer exponent",
        ));
    }
    Ok(base.pow(exponent))
}

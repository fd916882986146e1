//! Expression tree for scalar functions of the single variable `x`.

use std::fmt;

/// Binary operator tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Named single-argument function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
    Abs,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        match name {
            "exp" => Some(Func::Exp),
            "ln" => Some(Func::Ln),
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "sqrt" => Some(Func::Sqrt),
            "abs" => Some(Func::Abs),
            _ => None,
        }
    }
}

/// A node of the parsed expression tree.
///
/// Every leaf is a finite constant or the variable `x`; interior nodes are
/// unary minus, a binary operator, or a call of one of the named functions.
/// Trees are immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprNode {
    Const(f64),
    Var,
    Neg(Box<ExprNode>),
    Bin(BinOp, Box<ExprNode>, Box<ExprNode>),
    Call(Func, Box<ExprNode>),
}

impl ExprNode {
    /// Precedence level used by the canonical printer. Higher binds tighter.
    fn prec(&self) -> u8 {
        match self {
            ExprNode::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            ExprNode::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            ExprNode::Neg(_) => 3,
            ExprNode::Bin(BinOp::Pow, ..) => 4,
            ExprNode::Const(_) | ExprNode::Var | ExprNode::Call(..) => 5,
        }
    }

    fn fmt_prec(&self, min_prec: u8, out: &mut String) {
        let paren = self.prec() < min_prec;
        if paren {
            out.push('(');
        }
        match self {
            ExprNode::Const(c) => out.push_str(&format_const(*c)),
            ExprNode::Var => out.push('x'),
            ExprNode::Neg(inner) => {
                out.push('-');
                inner.fmt_prec(3, out);
            }
            ExprNode::Bin(op, lhs, rhs) => {
                let (sym, lp, rp) = match op {
                    // Left-associative operators need the right operand one
                    // level up so `a-(b+c)` and `a+(b+c)` keep their shape.
                    BinOp::Add => ("+", 1, 2),
                    BinOp::Sub => ("-", 1, 2),
                    BinOp::Mul => ("*", 2, 3),
                    BinOp::Div => ("/", 2, 3),
                    // `^` is right-associative and its base must be an atom.
                    BinOp::Pow => ("^", 5, 3),
                };
                lhs.fmt_prec(lp, out);
                out.push_str(sym);
                rhs.fmt_prec(rp, out);
            }
            ExprNode::Call(func, arg) => {
                out.push_str(func.name());
                out.push('(');
                arg.fmt_prec(1, out);
                out.push(')');
            }
        }
        if paren {
            out.push(')');
        }
    }
}

fn format_const(c: f64) -> String {
    // Display never uses exponent notation, which gets unwieldy outside this
    // range; {:e} round-trips through the parser's literal syntax.
    if c == 0.0 || (c.abs() >= 1e-4 && c.abs() < 1e16) {
        format!("{}", c)
    } else {
        format!("{:e}", c)
    }
}

impl fmt::Display for ExprNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

/// Render a tree as canonical function text.
///
/// The output reparses to a structurally identical tree, so printing is a
/// right inverse of parsing.
pub fn print(node: &ExprNode) -> String {
    let mut out = String::new();
    node.fmt_prec(0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var() -> Box<ExprNode> {
        Box::new(ExprNode::Var)
    }

    fn cnum(c: f64) -> Box<ExprNode> {
        Box::new(ExprNode::Const(c))
    }

    #[test]
    fn prints_minimal_parens() {
        let t = ExprNode::Bin(
            BinOp::Mul,
            Box::new(ExprNode::Bin(BinOp::Add, var(), cnum(1.0))),
            cnum(2.0),
        );
        assert_eq!(print(&t), "(x+1)*2");

        let t = ExprNode::Neg(Box::new(ExprNode::Bin(BinOp::Pow, var(), cnum(2.0))));
        assert_eq!(print(&t), "-x^2");

        let t = ExprNode::Bin(
            BinOp::Pow,
            var(),
            Box::new(ExprNode::Bin(BinOp::Pow, cnum(2.0), cnum(3.0))),
        );
        assert_eq!(print(&t), "x^2^3");

        let t = ExprNode::Bin(
            BinOp::Sub,
            var(),
            Box::new(ExprNode::Bin(BinOp::Sub, var(), cnum(1.0))),
        );
        assert_eq!(print(&t), "x-(x-1)");
    }

    #[test]
    fn pow_base_is_parenthesized() {
        let t = ExprNode::Bin(BinOp::Pow, Box::new(ExprNode::Neg(var())), cnum(2.0));
        assert_eq!(print(&t), "(-x)^2");
    }
}

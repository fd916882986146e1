//! Recursive-descent parser for function text.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | power
//! power  := atom ("^" factor)?
//! atom   := number | "x" | ident "(" expr ")" | "(" expr ")"
//! ```
//!
//! `^` is right-associative. The reserved identifiers `pi` and `e` parse as
//! constants; `exp`, `ln`, `sin`, `cos`, `sqrt`, `abs` are the known
//! functions.

use std::fmt;

use super::ast::{BinOp, ExprNode, Func};

/// Parse failure, with the byte offset into the source text.
#[derive(Debug, Clone, PartialEq)]
pub enum ParseError {
    /// Unexpected character or token; `expected` lists what the grammar
    /// would have accepted at `offset`.
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
    },
    /// An identifier that is not `x`, a reserved constant, or a known function.
    UnknownIdentifier { offset: usize, name: String },
    /// A numeric literal that does not fit a finite f64.
    InvalidNumber { offset: usize, text: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { offset, expected } => {
                write!(
                    f,
                    "syntax error at offset {}: expected {}",
                    offset,
                    expected.join(" | ")
                )
            }
            ParseError::UnknownIdentifier { offset, name } => {
                write!(f, "unknown identifier '{}' at offset {}", name, offset)
            }
            ParseError::InvalidNumber { offset, text } => {
                write!(f, "invalid number '{}' at offset {}", text, offset)
            }
        }
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    /// Byte offset of the failure in the source text.
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::InvalidNumber { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Returns the next token and its starting byte offset.
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::End, start));
        }
        let c = self.src[self.pos] as char;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            self.pos += 1;
            return Ok((tok, start));
        }
        if c.is_ascii_digit() || c == '.' {
            return self.lex_number(start);
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while self.pos < self.src.len() {
                let c = self.src[self.pos] as char;
                if c.is_ascii_alphanumeric() || c == '_' {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            let name = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .to_owned();
            return Ok((Tok::Ident(name), start));
        }
        Err(ParseError::Syntax {
            offset: start,
            expected: vec!["number", "x", "identifier", "(", "-"],
        })
    }

    fn lex_number(&mut self, start: usize) -> Result<(Tok, usize), ParseError> {
        let digits = |lx: &mut Self| {
            while lx.pos < lx.src.len() && (lx.src[lx.pos] as char).is_ascii_digit() {
                lx.pos += 1;
            }
        };
        digits(self);
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            digits(self);
        }
        // Exponent part: only consume `e`/`E` when digits actually follow,
        // so `2*e` still lexes `e` as the constant.
        if self.pos < self.src.len() && (self.src[self.pos] | 0x20) == b'e' {
            let mut probe = self.pos + 1;
            if probe < self.src.len() && (self.src[probe] == b'+' || self.src[probe] == b'-') {
                probe += 1;
            }
            if probe < self.src.len() && (self.src[probe] as char).is_ascii_digit() {
                self.pos = probe;
                digits(self);
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok((Tok::Number(v), start)),
            _ => Err(ParseError::InvalidNumber {
                offset: start,
                text: text.to_owned(),
            }),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    tok_offset: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(src);
        let (tok, tok_offset) = lexer.next()?;
        Ok(Parser {
            lexer,
            tok,
            tok_offset,
        })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, off) = self.lexer.next()?;
        self.tok = tok;
        self.tok_offset = off;
        Ok(())
    }

    fn expr(&mut self) -> Result<ExprNode, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = ExprNode::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<ExprNode, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.factor()?;
            lhs = ExprNode::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<ExprNode, ParseError> {
        if self.tok == Tok::Minus {
            self.bump()?;
            let inner = self.factor()?;
            return Ok(ExprNode::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprNode, ParseError> {
        let base = self.atom()?;
        if self.tok == Tok::Caret {
            self.bump()?;
            let exponent = self.factor()?;
            return Ok(ExprNode::Bin(
                BinOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprNode, ParseError> {
        match self.tok.clone() {
            Tok::Number(v) => {
                self.bump()?;
                Ok(ExprNode::Const(v))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(self.syntax(vec![")"]));
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let offset = self.tok_offset;
                self.bump()?;
                if self.tok == Tok::LParen {
                    let func = Func::from_name(&name).ok_or(ParseError::UnknownIdentifier {
                        offset,
                        name: name.clone(),
                    })?;
                    self.bump()?;
                    let arg = self.expr()?;
                    if self.tok != Tok::RParen {
                        return Err(self.syntax(vec![")"]));
                    }
                    self.bump()?;
                    return Ok(ExprNode::Call(func, Box::new(arg)));
                }
                match name.as_str() {
                    "x" => Ok(ExprNode::Var),
                    "pi" => Ok(ExprNode::Const(std::f64::consts::PI)),
                    "e" => Ok(ExprNode::Const(std::f64::consts::E)),
                    _ if Func::from_name(&name).is_some() => Err(self.syntax(vec!["("])),
                    _ => Err(ParseError::UnknownIdentifier { offset, name }),
                }
            }
            _ => Err(self.syntax(vec!["number", "x", "identifier", "(", "-"])),
        }
    }

    fn syntax(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError::Syntax {
            offset: self.tok_offset,
            expected,
        }
    }
}

/// Parse function text into an expression tree.
pub fn parse(text: &str) -> Result<ExprNode, ParseError> {
    let mut parser = Parser::new(text)?;
    let root = parser.expr()?;
    if parser.tok != Tok::End {
        return Err(parser.syntax(vec!["+", "-", "*", "/", "^", "end of input"]));
    }
    Ok(root)
}

//! Expression trees for radial potentials `V(r)`.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor (("*"|"/") factor)* ;
//! factor := "-" factor | atom ("^" integer)? ;
//! atom   := number | "r" | "(" expr ")" ;
//! ```
//!
//! `^` binds tighter than unary minus, so `-r^2` is `-(r^2)`. Exponents are
//! (optionally signed) integer literals.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{Precision, Real};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Decimal literal, kept verbatim so it can be read at any precision.
    Num(String),
    R,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    pub fn num(text: impl Into<String>) -> Expr {
        Expr::Num(text.into())
    }

    /// Evaluates the tree at `r`.
    pub fn eval<T: Real>(&self, r: &T, prec: Precision) -> Result<T> {
        Ok(match self {
            Expr::Num(text) => literal(text, prec)?,
            Expr::R => r.clone(),
            Expr::Neg(a) => -a.eval(r, prec)?,
            Expr::Add(a, b) => a.eval(r, prec)? + b.eval(r, prec)?,
            Expr::Sub(a, b) => a.eval(r, prec)? - b.eval(r, prec)?,
            Expr::Mul(a, b) => a.eval(r, prec)? * b.eval(r, prec)?,
            Expr::Div(a, b) => {
                let den = b.eval(r, prec)?;
                if den.is_zero() {
                    return Err(Error::SingularPoint { at: r.to_string() });
                }
                a.eval(r, prec)? / den
            }
            Expr::Pow(a, n) => {
                let base = a.eval(r, prec)?;
                if *n < 0 && base.is_zero() {
                    return Err(Error::SingularPoint { at: r.to_string() });
                }
                base.powi(*n)
            }
        })
    }

    // binding strength of the node's outermost operator
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) | Expr::Div(..) => 1,
            Expr::Neg(..) => 2,
            Expr::Pow(..) => 3,
            Expr::Num(_) | Expr::R => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        if self.level() < min_level {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(t) => write!(f, "{t}"),
            Expr::R => write!(f, "r"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 2)
            }
            Expr::Add(a, b) => {
                a.write_at(f, 0)?;
                write!(f, " + ")?;
                b.write_at(f, 1)
            }
            Expr::Sub(a, b) => {
                a.write_at(f, 0)?;
                write!(f, " - ")?;
                b.write_at(f, 1)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "*")?;
                b.write_at(f, 2)
            }
            Expr::Div(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "/")?;
                b.write_at(f, 2)
            }
            Expr::Pow(a, n) => {
                a.write_at(f, 4)?;
                write!(f, "^{n}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

pub(crate) fn literal<T: Real>(text: &str, prec: Precision) -> Result<T> {
    T::parse_decimal(text, prec).ok_or_else(|| Error::Syntax {
        offset: 0,
        message: format!("unreadable number `{text}`"),
    })
}

/// A parsed potential together with its source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialExpr {
    root: Expr,
    source: String,
}

impl PotentialExpr {
    pub fn new(root: Expr) -> Self {
        let source = root.to_string();
        PotentialExpr { root, source }
    }

    /// `-1/(r+alpha)` with `alpha` kept as a literal.
    pub fn truncated_coulomb(alpha: &str) -> Result<Self> {
        parse_potential(&format!("-1/(r+{alpha})"))
    }

    pub fn root(&self) -> &Expr {
        &self.root
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval<T: Real>(&self, r: &T, prec: Precision) -> Result<T> {
        self.root.eval(r, prec)
    }
}

impl fmt::Display for PotentialExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

impl std::str::FromStr for PotentialExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_potential(s)
    }
}

/// Parses potential text into an expression tree.
pub fn parse_potential(text: &str) -> Result<PotentialExpr> {
    let mut p = Parser { src: text, pos: 0 };
    let root = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(PotentialExpr {
        root,
        source: text.to_string(),
    })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.peek_raw()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == b'+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = if op == b'*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.integer()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i32> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek_raw(), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.peek_raw(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected an integer exponent"));
        }
        if matches!(self.peek_raw(), Some(b'.' | b'e' | b'E')) {
            return Err(self.error("exponents must be integers"));
        }
        self.src[start..self.pos].parse::<i32>().map_err(|_| Error::Syntax {
            offset: start,
            message: "exponent out of range".to_string(),
        })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'0'..=b'9' | b'.') => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek_raw(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                if name == "r" {
                    Ok(Expr::R)
                } else {
                    Err(Error::UnknownSymbol {
                        name: name.to_string(),
                        offset: start,
                    })
                }
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut seen_digit = false;
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
            seen_digit = true;
        }
        if self.pos < bytes.len() && bytes[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
                seen_digit = true;
            }
        }
        if !seen_digit {
            self.pos = start;
            return Err(self.error("malformed number"));
        }
        if self.pos < bytes.len() && matches!(bytes[self.pos], b'e' | b'E') {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < bytes.len() && matches!(bytes[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            let exp_start = self.pos;
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == exp_start {
                self.pos = mark;
                return Err(self.error("malformed exponent"));
            }
        }
        Ok(Expr::Num(self.src[start..self.pos].to_string()))
    }
}

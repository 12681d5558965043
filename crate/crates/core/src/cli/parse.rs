//! The expression grammar shared by every ring the front end handles:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' uint)*
//! atom  := uint | 'p' | 'X' uint | 't' ('^' (uint | '(' ['-'] rat ')'))?
//!        | 'gamma(' expr ')' | 'wp(' expr ')' | 'kfrac(' expr ';' expr ')'
//!        | 'sosinv(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! A quotient of two literals folds into one rational literal.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::coefficients::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    /// Nonnegative literal.
    Num(Rational),
    /// The prime of the ring descriptor.
    Prime,
    /// 0-based; `X1` is `Var(0)`.
    Var(usize),
    TPow(Rational),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Neg(Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Gamma(Box<ExprAst>),
    Wp(Box<ExprAst>),
    Kfrac(Box<ExprAst>, Box<ExprAst>),
    SosInv(Vec<ExprAst>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: expected {}, found {found}", expected.join(" or "))]
    Syntax { line: usize, col: usize, expected: Vec<String>, found: String },
    #[error("{func} takes {expected} argument(s), found {found}")]
    Arity { func: String, expected: String, found: usize },
    #[error("division by a literal zero at {line}:{col}")]
    ZeroDivisor { line: usize, col: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn is_ident(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn line_col(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.iter().filter(|b| **b == b'\n').count() + 1;
        let col = pos - before.iter().rposition(|b| *b == b'\n').map_or(0, |i| i + 1) + 1;
        (line, col)
    }

    fn error(&mut self, expected: &[&str]) -> ParseError {
        self.skip_ws();
        let (line, col) = self.line_col(self.pos);
        let found = match self.src.get(self.pos) {
            None => "end of input".to_string(),
            Some(_) => {
                let end = (self.pos + 1..=self.src.len())
                    .find(|&e| e == self.src.len() || !is_ident(self.src[e - 1]) || !is_ident(self.src[e]))
                    .unwrap_or(self.src.len());
                format!("`{}`", String::from_utf8_lossy(&self.src[self.pos..end]))
            }
        };
        ParseError::Syntax { line, col, expected: expected.iter().map(|s| s.to_string()).collect(), found }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let s = format!("`{}`", c as char);
            Err(self.error(&[&s]))
        }
    }

    fn uint(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap())
    }

    fn small_uint(&mut self, what: &str) -> Result<u32, ParseError> {
        let save = self.pos;
        match self.uint().and_then(|n| n.to_u32()) {
            Some(n) => Ok(n),
            None => {
                self.pos = save;
                Err(self.error(&[what]))
            }
        }
    }

    fn word(&mut self) -> &'a [u8] {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(b'/') {
                self.pos += 1;
                self.skip_ws();
                let at = self.pos;
                let rhs = self.unary()?;
                lhs = match (lhs, rhs) {
                    (_, ExprAst::Num(d)) if d.is_zero() => {
                        let (line, col) = self.line_col(at);
                        return Err(ParseError::ZeroDivisor { line, col });
                    }
                    (ExprAst::Num(n), ExprAst::Num(d)) => ExprAst::Num(n / d),
                    (l, r) => ExprAst::Div(Box::new(l), Box::new(r)),
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        if self.eat(b'-') {
            return Ok(ExprAst::Neg(Box::new(self.unary()?)));
        }
        let mut base = self.atom()?;
        while self.eat(b'^') {
            let k = self.small_uint("a nonnegative integer exponent")?;
            base = ExprAst::Pow(Box::new(base), k);
        }
        Ok(base)
    }

    fn args(&mut self, func: &str, sep: u8, want: Option<usize>) -> Result<Vec<ExprAst>, ParseError> {
        self.expect(b'(')?;
        let mut out = vec![self.expr()?];
        while self.eat(sep) {
            out.push(self.expr()?);
        }
        if self.peek() != Some(b')') {
            let s = format!("`{}`", sep as char);
            return Err(self.error(&[&s, "`)`"]));
        }
        self.pos += 1;
        if let Some(n) = want {
            if out.len() != n {
                return Err(ParseError::Arity { func: func.to_string(), expected: n.to_string(), found: out.len() });
            }
        }
        Ok(out)
    }

    fn t_exponent(&mut self) -> Result<Rational, ParseError> {
        if let Some(n) = self.uint() {
            return Ok(Rational::from_integer(n));
        }
        if !self.eat(b'(') {
            return Err(self.error(&["an integer", "`(`"]));
        }
        let neg = self.eat(b'-');
        let num = match self.uint() {
            Some(n) => n,
            None => return Err(self.error(&["an integer"])),
        };
        let den = if self.eat(b'/') {
            match self.uint() {
                Some(d) if !d.is_zero() => d,
                _ => return Err(self.error(&["a positive integer"])),
            }
        } else {
            BigInt::one()
        };
        self.expect(b')')?;
        let q = Rational::new(num, den);
        Ok(if neg { -q } else { q })
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        const EXPECTED: &[&str] = &["a number", "`p`", "a variable `X<i>`", "`t`", "a function call", "`(`"];
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(ExprAst::Num(Rational::from_integer(self.uint().unwrap()))),
            Some(c) if c.is_ascii_alphabetic() => {
                let save = self.pos;
                let w = self.word();
                match w {
                    b"p" => Ok(ExprAst::Prime),
                    b"t" => {
                        if self.eat(b'^') {
                            Ok(ExprAst::TPow(self.t_exponent()?))
                        } else {
                            Ok(ExprAst::TPow(Rational::one()))
                        }
                    }
                    b"X" => match self.uint().and_then(|n| n.to_usize()) {
                        Some(i) if i >= 1 && self.src.get(self.pos).is_none_or(|b| !is_ident(*b)) => {
                            Ok(ExprAst::Var(i - 1))
                        }
                        _ => {
                            self.pos = save;
                            Err(self.error(EXPECTED))
                        }
                    },
                    b"gamma" => Ok(ExprAst::Gamma(Box::new(self.args("gamma", b',', Some(1))?.remove(0)))),
                    b"wp" => Ok(ExprAst::Wp(Box::new(self.args("wp", b',', Some(1))?.remove(0)))),
                    b"kfrac" => {
                        let mut a = self.args("kfrac", b';', Some(2))?;
                        let g = a.pop().unwrap();
                        Ok(ExprAst::Kfrac(Box::new(a.pop().unwrap()), Box::new(g)))
                    }
                    b"sosinv" => Ok(ExprAst::SosInv(self.args("sosinv", b',', None)?)),
                    _ => {
                        self.pos = save;
                        Err(self.error(EXPECTED))
                    }
                }
            }
            _ => Err(self.error(EXPECTED)),
        }
    }
}

pub fn parse_expression(src: &str) -> Result<ExprAst, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error(&["an operator", "end of input"]));
    }
    Ok(e)
}

impl ExprAst {
    fn level(&self) -> u8 {
        match self {
            ExprAst::Add(..) | ExprAst::Sub(..) => 1,
            ExprAst::Mul(..) | ExprAst::Div(..) => 2,
            ExprAst::Num(q) if !q.is_integer() => 2,
            ExprAst::Neg(_) => 3,
            ExprAst::Pow(..) | ExprAst::TPow(_) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            ExprAst::Num(q) => write!(f, "{q}"),
            ExprAst::Prime => write!(f, "p"),
            ExprAst::Var(i) => write!(f, "X{}", i + 1),
            ExprAst::TPow(q) => {
                if q.is_one() {
                    write!(f, "t")
                } else if q.is_integer() && !q.is_negative() {
                    write!(f, "t^{q}")
                } else {
                    write!(f, "t^({q})")
                }
            }
            ExprAst::Add(a, b) | ExprAst::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " {} ", if matches!(self, ExprAst::Add(..)) { '+' } else { '-' })?;
                b.write_at(f, 2)
            }
            ExprAst::Mul(a, b) | ExprAst::Div(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "{}", if matches!(self, ExprAst::Mul(..)) { '*' } else { '/' })?;
                b.write_at(f, 3)
            }
            ExprAst::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            ExprAst::Pow(a, k) => {
                a.write_at(f, 5)?;
                write!(f, "^{k}")
            }
            ExprAst::Gamma(a) => write!(f, "gamma({a})"),
            ExprAst::Wp(a) => write!(f, "wp({a})"),
            ExprAst::Kfrac(a, b) => write!(f, "kfrac({a}; {b})"),
            ExprAst::SosInv(xs) => {
                write!(f, "sosinv(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }

    /// Largest variable index used, plus one.
    pub fn nvars_used(&self) -> usize {
        match self {
            ExprAst::Var(i) => i + 1,
            ExprAst::Num(_) | ExprAst::Prime | ExprAst::TPow(_) => 0,
            ExprAst::Add(a, b)
            | ExprAst::Sub(a, b)
            | ExprAst::Mul(a, b)
            | ExprAst::Div(a, b)
            | ExprAst::Kfrac(a, b) => a.nvars_used().max(b.nvars_used()),
            ExprAst::Neg(a) | ExprAst::Pow(a, _) | ExprAst::Gamma(a) | ExprAst::Wp(a) => a.nvars_used(),
            ExprAst::SosInv(xs) => xs.iter().map(|x| x.nvars_used()).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

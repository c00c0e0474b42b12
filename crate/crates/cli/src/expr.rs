//! Series expressions: a recursive-descent grammar over rationals, `zeta`,
//! the free scalars `t1..tr`, the generators `x1..xn`, `+`, `-`, `*`,
//! integer `^`, parentheses, and `inv(...)`.
//!
//! Precedence is `^` over `*` over binary `+`/`-`; products and sums are
//! left-associative (the factor order matters, the ring is
//! noncommutative).  A negative exponent is only accepted on an identifier
//! base; anything else must go through `inv(...)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use qcps_core::laurent::LaurentElem;
use qcps_core::scalar::FieldElem;
use qcps_core::series::SeriesRing;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Rational(BigRational),
    Zeta,
    T(usize),
    X(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Inv(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

/// Tokens tagged with the 1-based character position they start at.
fn lex(text: &str) -> Result<Vec<(Tok, usize)>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, pos));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, pos));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, pos));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, pos));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, pos));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, pos));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Num(digits.parse().unwrap()), pos));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            }
            other => {
                return Err(CliError::Parse(format!(
                    "unexpected character '{}' at position {}",
                    other, pos
                )));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    at: usize,
    end: usize,
    n: usize,
    r: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), CliError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(CliError::Parse(format!(
                "expected {} at position {}",
                what, pos
            ))),
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut acc = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, CliError> {
        let base = self.atom()?;
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(base);
        }
        let caret_pos = self.pos();
        self.bump();
        let negative = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        let e = match self.bump() {
            Some(Tok::Num(k)) => i64::try_from(&k).map_err(|_| {
                CliError::Parse(format!("exponent at position {} is too large", pos))
            })?,
            _ => {
                return Err(CliError::Parse(format!(
                    "expected an integer exponent at position {}",
                    pos
                )));
            }
        };
        let e = if negative { -e } else { e };
        if e < 0 && !matches!(base, Expr::Zeta | Expr::T(_) | Expr::X(_)) {
            return Err(CliError::Parse(format!(
                "negative exponent at position {} needs a single generator or scalar base; \
                 wrap the factor in inv(...)",
                caret_pos
            )));
        }
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(p)) => {
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Num(q)) => {
                            if q == BigInt::from(0) {
                                return Err(CliError::Parse(format!(
                                    "zero denominator at position {}",
                                    dpos
                                )));
                            }
                            Ok(Expr::Rational(BigRational::new(p, q)))
                        }
                        _ => Err(CliError::Parse(format!(
                            "expected a denominator at position {}",
                            dpos
                        ))),
                    }
                } else {
                    Ok(Expr::Rational(BigRational::from(p)))
                }
            }
            Some(Tok::Ident(name)) => self.ident(&name, pos),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(t) => Err(CliError::Parse(format!(
                "unexpected token {:?} at position {}",
                t, pos
            ))),
            None => Err(CliError::Parse(format!(
                "unexpected end of expression at position {}",
                pos
            ))),
        }
    }

    fn ident(&mut self, name: &str, pos: usize) -> Result<Expr, CliError> {
        if name == "zeta" {
            return Ok(Expr::Zeta);
        }
        if name == "inv" {
            self.expect(Tok::LParen, "'(' after inv")?;
            let inner = self.expr()?;
            self.expect(Tok::RParen, "')'")?;
            return Ok(Expr::Inv(Box::new(inner)));
        }
        for (prefix, bound, kind) in [("x", self.n, "generator"), ("t", self.r, "free scalar")] {
            if let Some(rest) = name.strip_prefix(prefix) {
                if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                    if rest.starts_with('0') {
                        break;
                    }
                    let k: usize = rest.parse().map_err(|_| {
                        CliError::Parse(format!("index too large at position {}", pos))
                    })?;
                    if k < 1 || k > bound {
                        return Err(CliError::Parse(format!(
                            "unknown {} {} at position {}: the ring has {}",
                            kind, name, pos, bound
                        )));
                    }
                    return Ok(if prefix == "x" { Expr::X(k) } else { Expr::T(k) });
                }
            }
        }
        Err(CliError::Parse(format!(
            "unknown identifier '{}' at position {}",
            name, pos
        )))
    }
}

/// Parse against a ring with `n` generators and `r` free scalars.
pub fn parse(text: &str, n: usize, r: usize) -> Result<Expr, CliError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(CliError::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks: &toks,
        at: 0,
        end: text.chars().count() + 1,
        n,
        r,
    };
    let e = p.expr()?;
    if p.at != toks.len() {
        return Err(CliError::Parse(format!(
            "trailing input at position {}",
            p.pos()
        )));
    }
    Ok(e)
}

pub fn eval(e: &Expr, ring: &SeriesRing) -> Result<LaurentElem, CliError> {
    let sig = ring.q().sig();
    let constant = |c: FieldElem| LaurentElem::from_series(ring.constant(c));
    Ok(match e {
        Expr::Rational(q) => constant(FieldElem::from_rational(sig, q.clone())),
        Expr::Zeta => constant(FieldElem::zeta(sig, 1)),
        Expr::T(k) => constant(FieldElem::t_pow(sig, *k, 1)),
        Expr::X(i) => LaurentElem::from_series(ring.var(*i)?),
        Expr::Neg(a) => eval(a, ring)?.neg(),
        Expr::Add(a, b) => eval(a, ring)?.add(&eval(b, ring)?),
        Expr::Sub(a, b) => eval(a, ring)?.sub(&eval(b, ring)?),
        Expr::Mul(a, b) => eval(a, ring)?.mul(&eval(b, ring)?),
        Expr::Pow(a, k) => eval(a, ring)?.pow(*k)?,
        Expr::Inv(a) => eval(a, ring)?.inv()?,
    })
}

//! Expression grammar shared by scalars, polynomials and presentation files.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" integer)?
//! atom  := integer | name | "(" expr ")"
//! ```
//!
//! Names resolve to ring variables or, over F_p(x), to the transcendental.
//! Division is only allowed by nonzero constants.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::{PolyRing, Polynomial, RingRef};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().map_err(|_| Error::parse(start, "bad integer"))?;
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() {
                let d = bytes[i] as char;
                if d.is_ascii_alphanumeric() || d == '_' || d == '#' || d == '\'' {
                    i += 1;
                } else {
                    break;
                }
            }
            out.push((start, Tok::Name(text[start..i].into())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::parse(i, alloc::format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a RingRef,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Sym(c))) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_sym() {
            self.pos += 1;
            let at = self.offset();
            let rhs = self.unary()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                let c = rhs.as_constant().ok_or_else(|| Error::parse(at, "division by a non-constant"))?;
                let inv = c.inverse().map_err(|_| Error::parse(at, "division by zero"))?;
                acc = acc.scale(&inv);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.peek_sym() == Some('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek_sym() == Some('^') {
            self.pos += 1;
            let at = self.offset();
            match self.toks.get(self.pos) {
                Some((_, Tok::Int(n))) => {
                    let e: u32 = n.try_into().map_err(|_| Error::parse(at, "exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::parse(at, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.offset();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(Error::parse(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&n))),
            Tok::Name(name) => {
                if let Ok(i) = self.ring.var_index(&name) {
                    Ok(Polynomial::var(self.ring, i))
                } else if self.ring.field().function_variable() == Some(name.as_str()) {
                    Ok(Polynomial::constant(self.ring, self.ring.field().generator()?))
                } else {
                    Err(Error::parse(at, alloc::format!("unknown name `{name}`")))
                }
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if self.peek_sym() != Some(')') {
                    return Err(Error::parse(self.offset(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Sym(c) => Err(Error::parse(at, alloc::format!("unexpected `{c}`"))),
        }
    }
}

pub fn parse_polynomial(ring: &RingRef, text: &str) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { ring, toks, pos: 0, end: text.len() };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.offset(), "trailing input"));
    }
    Ok(out)
}

pub fn parse_scalar(field: &Field, text: &str) -> Result<Scalar> {
    let ring = PolyRing::new(field.clone(), Vec::new(), Vec::new(), Default::default())?;
    let p = parse_polynomial(&ring, text)?;
    Ok(p.as_constant().expect("ring without variables"))
}

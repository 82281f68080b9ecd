//! Recursive-descent parser for polynomial expressions in `t` and `zN`.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 't' | 'z' integer | '(' expr ')'
//! ```
//! Division is only allowed by nonzero constants.

use num_bigint::BigInt;

use super::{CycPoly, Cyclotomic, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    T,
    Zeta(u32),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = s[start..i].parse().map_err(|_| Error::Parse(format!("bad integer in {s:?}")))?;
                out.push(Tok::Int(v));
            }
            b't' => {
                out.push(Tok::T);
                i += 1;
            }
            b'z' => {
                i += 1;
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u32 = s[start..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("root of unity needs an order in {s:?}")))?;
                if n == 0 {
                    return Err(Error::Parse("root of unity order must be positive".into()));
                }
                out.push(Tok::Zeta(n));
            }
            b'+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            b'-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            b'*' => {
                out.push(Tok::Star);
                i += 1;
            }
            b'/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            b'^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            b'(' => {
                out.push(Tok::Open);
                i += 1;
            }
            b')' => {
                out.push(Tok::Close);
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {:?} in {s:?}", c as char))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<CycPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    let c = d
                        .as_constant()
                        .ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
                    acc = acc.scale(&c.inv()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<CycPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<CycPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<CycPoly> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(CycPoly::from_rational(Rational::from_integer(v))),
            Some(Tok::T) => Ok(CycPoly::t()),
            Some(Tok::Zeta(n)) => Ok(CycPoly::constant(Cyclotomic::zeta(n, 1))),
            Some(Tok::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::Close) => Ok(inner),
                    other => Err(Error::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_poly(s: &str) -> Result<CycPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

/// Parses a constant expression such as `-1/2`, `z3` or `(1 + z5^2)`.
pub fn parse_cyclotomic(s: &str) -> Result<Cyclotomic> {
    parse_poly(s)?
        .as_constant()
        .ok_or_else(|| Error::Parse(format!("{s:?} is not a constant")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_table_forms() {
        let a = parse_poly("t^2/2 - 5*t/2 + 4").unwrap();
        assert_eq!(a.to_string(), "1/2*t^2 - 5/2*t + 4");
        let b = parse_poly("t^3/3 - 4*t^2 + 47*t/3 + z3 + z3^2 - 20").unwrap();
        assert_eq!(b.to_string(), "1/3*t^3 - 4*t^2 + 47/3*t - 21");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("t +").is_err());
        assert!(parse_poly("1/t").is_err());
        assert!(parse_poly("x").is_err());
        assert!(parse_poly("(t").is_err());
        assert!(parse_poly("1/0").is_err());
    }

    #[test]
    fn canonical_text_roundtrips() {
        for s in ["0", "t", "-t^3 + 1", "(-1 + 35*z3)*t^2 + (z3)", "(2*z5 - z5^3)*t + 1/7"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }
}

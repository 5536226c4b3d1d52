//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := rational | variable | '(' expr ')'
//! ```
//! Whitespace is ignored; juxtaposition (`2x`) is rejected.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PolyError, PolyRing, Polynomial, Rational, Result, MAX_EXPONENT};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> PolyError {
    PolyError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Num(n)));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = acc.checked_mul(&self.factor()?)?;
        }
        match self.peek() {
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                Err(syntax(self.offset(), "implicit multiplication is not allowed; use `*`"))
            }
            _ => Ok(acc),
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => {
                let k: u32 = u32::try_from(&n).map_err(|_| PolyError::ExponentOverflow)?;
                if k > MAX_EXPONENT {
                    return Err(PolyError::ExponentOverflow);
                }
                base.pow(k)
            }
            _ => Err(syntax(at, "expected a non-negative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<Polynomial> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dat = self.offset();
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => Ok(Polynomial::constant(self.ring, Rational::new(n, d))),
                        Some(Tok::Num(_)) => Err(syntax(dat, "zero denominator")),
                        _ => Err(syntax(dat, "expected a denominator")),
                    }
                } else {
                    Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => Polynomial::var(self.ring, &name),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(close, "expected `)`")),
                }
            }
            Some(_) => Err(syntax(at, "expected a number, variable or `(`")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` into a canonical polynomial of `ring`.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(syntax(0, "empty input"));
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), ring };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.offset(), "trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::MonomialOrder;
    use super::*;

    fn xyz() -> Arc<PolyRing> {
        PolyRing::new(["x", "y", "z"], MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn parses_examples() {
        let r = xyz();
        assert_eq!(parse_poly("x^3+y^3+z^4", &r).unwrap().len(), 3);
        assert!(parse_poly("0", &r).unwrap().terms().is_empty());
        assert_eq!(parse_poly("(x+y)^2-x^2-2*x*y", &r).unwrap().render(), "y^2");
        assert_eq!(parse_poly(" - ( x - 1/2 ) * 4 ", &r).unwrap().render(), "-4*x+2");
    }

    #[test]
    fn rejects_bad_input() {
        let r = xyz();
        assert!(matches!(parse_poly("2x", &r), Err(PolyError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("x y", &r), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("x+", &r), Err(PolyError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("(x", &r), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("x^-1", &r), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("1/0", &r), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("x $ y", &r), Err(PolyError::Syntax { pos: 2, .. })));
        assert_eq!(parse_poly("w+1", &r).unwrap_err(), PolyError::UnknownVariable("w".into()));
        assert_eq!(parse_poly("x^99999999999", &r).unwrap_err(), PolyError::ExponentOverflow);
        assert_eq!(parse_poly("x^4294967295", &r).unwrap_err(), PolyError::ExponentOverflow);
    }

    #[test]
    fn multi_letter_variables() {
        let r = PolyRing::new(["x1", "x_2"], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(parse_poly("x1*x_2^2", &r).unwrap().render(), "x1*x_2^2");
    }
}

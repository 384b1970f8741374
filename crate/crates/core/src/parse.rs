//! Text input for polynomials and scalars.
//!
//! Accepted syntax: integers, rationals `p/q` (slash only between integer
//! literals), root-of-unity literals `zN` for any N dividing the ambient
//! field order (unless `zN` is a declared variable, which shadows the
//! literal), variables, `+ - * ^`, parentheses. `^` takes a nonnegative
//! integer exponent and binds tighter than unary minus, so `-x^2` is
//! `-(x^2)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{Poly, VarSet};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("digits parse");
                toks.push((start, Tok::Int(n)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(s[start..i].to_string())));
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    lx: Lexer,
    vars: &'a Arc<VarSet>,
    order: u32,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.lx.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.lx
            .toks
            .get(self.lx.at)
            .map(|(p, _)| *p)
            .unwrap_or(usize::MAX)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.lx.toks.get(self.lx.at).map(|(_, t)| t.clone());
        if t.is_some() {
            self.lx.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let pos = self.pos();
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => Err(Error::Parse {
                pos,
                msg: format!("expected {what}"),
            }),
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn parse_expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            negate = true;
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.parse_term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.parse_term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Poly> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.next();
            let f = self.parse_factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Poly> {
        let base = self.parse_atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let pos = self.pos();
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e = u32::try_from(&n).map_err(|_| Error::Parse {
                        pos,
                        msg: "exponent out of range".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse {
                    pos,
                    msg: "expected a nonnegative integer exponent".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn parse_atom(&mut self) -> Result<Poly> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Int(n)) => {
                // rational literal p/q
                if self.peek() == Some(&Tok::Slash) {
                    self.next();
                    let dpos = self.pos();
                    match self.next() {
                        Some(Tok::Int(d)) => {
                            if d == BigInt::from(0) {
                                return Err(Error::Parse {
                                    pos: dpos,
                                    msg: "zero denominator".into(),
                                });
                            }
                            let q = BigRational::new(n, d);
                            Ok(Poly::constant(self.vars, Scalar::from_rational(1, q)))
                        }
                        _ => Err(Error::Parse {
                            pos: dpos,
                            msg: "expected an integer denominator".into(),
                        }),
                    }
                } else {
                    let q = BigRational::from_integer(n);
                    Ok(Poly::constant(self.vars, Scalar::from_rational(1, q)))
                }
            }
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.vars.index_of(&name) {
                    return Ok(Poly::var(self.vars, i));
                }
                if let Some(m) = root_literal(&name) {
                    if m >= 1 && self.order % m == 0 {
                        let root = Scalar::primitive_root(self.order, m)
                            .expect("divisor checked");
                        return Ok(Poly::constant(self.vars, root));
                    }
                    return Err(Error::Parse {
                        pos,
                        msg: format!(
                            "`{name}` needs a field containing {m}-th roots of unity \
                             (ambient order {})",
                            self.order
                        ),
                    });
                }
                Err(Error::UnknownVariable(name))
            }
            Some(Tok::LParen) => {
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(t) => Err(Error::Parse {
                pos,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn root_literal(name: &str) -> Option<u32> {
    let rest = name.strip_prefix('z')?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

/// Parses a polynomial over `vars` with coefficients in the cyclotomic
/// field of the given order.
pub fn parse_poly(vars: &Arc<VarSet>, order: u32, s: &str) -> Result<Poly> {
    let toks = lex(s)?;
    let mut p = Parser {
        lx: Lexer { toks, at: 0 },
        vars,
        order,
    };
    let poly = p.parse_expr()?;
    if p.lx.at != p.lx.toks.len() {
        return Err(Error::Parse {
            pos: p.pos(),
            msg: "trailing input".into(),
        });
    }
    Ok(poly)
}

/// Parses a constant expression into a scalar of the given field order.
pub fn parse_scalar(order: u32, s: &str) -> Result<Scalar> {
    let vars = VarSet::empty();
    let p = parse_poly(&vars, order, s)?;
    let c = p
        .terms()
        .next()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(|| Scalar::zero(1));
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_polynomials() {
        let vs = VarSet::unweighted(&["x", "y"]).unwrap();
        let f = parse_poly(&vs, 1, "x^2 + 2*x*y - 3").unwrap();
        assert_eq!(f.to_string(), "x^2+2*x*y-3");
        let g = parse_poly(&vs, 1, "(x+y)^2 - (x-y)^2").unwrap();
        assert_eq!(g.to_string(), "4*x*y");
    }

    #[test]
    fn unary_minus_binds_below_power() {
        let vs = VarSet::unweighted(&["x"]).unwrap();
        let f = parse_poly(&vs, 1, "-x^2").unwrap();
        assert_eq!(f.to_string(), "-x^2");
        let g = parse_poly(&vs, 1, "(-x)^2").unwrap();
        assert_eq!(g.to_string(), "x^2");
    }

    #[test]
    fn rational_and_root_literals() {
        let vs = VarSet::unweighted(&["x"]).unwrap();
        let f = parse_poly(&vs, 6, "1/2*x + z6 - z3").unwrap();
        // z6 - z3 = (z6) - (z6 - 1) = 1 in the order-6 field
        assert_eq!(f.to_string(), "1/2*x+1");
        assert!(parse_poly(&vs, 4, "z3").is_err());
        assert!(parse_poly(&vs, 1, "x/2").is_err());
    }

    #[test]
    fn declared_variable_shadows_root_literal() {
        let vs = VarSet::unweighted(&["z2"]).unwrap();
        let f = parse_poly(&vs, 2, "z2^3").unwrap();
        assert_eq!(f.degree(), Some(3));
    }

    #[test]
    fn scalar_parsing() {
        let c = parse_scalar(4, "z4^2").unwrap();
        assert_eq!(c, Scalar::from_int(4, -1));
        let c = parse_scalar(1, "-5/3").unwrap();
        assert!(c.is_rational());
        assert!(parse_scalar(1, "q").is_err());
    }

    #[test]
    fn error_positions() {
        let vs = VarSet::unweighted(&["x"]).unwrap();
        match parse_poly(&vs, 1, "x + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_poly(&vs, 1, "x x").is_err());
        assert!(parse_poly(&vs, 1, "(x").is_err());
        assert!(parse_poly(&vs, 1, "x^-1").is_err());
    }

    #[test]
    fn round_trips_display() {
        let vs = VarSet::unweighted(&["x", "y"]).unwrap();
        for s in [
            "x^2-y^2",
            "4*x*y+1",
            "-x+1/2",
            "x^3*y^3-3*x^2*y^2+3*x*y-1",
        ] {
            let f = parse_poly(&vs, 1, s).unwrap();
            let g = parse_poly(&vs, 1, &f.to_string()).unwrap();
            assert_eq!(f, g);
            assert_eq!(f.to_string(), s);
        }
    }
}

//! Parser for scalar and polynomial literals.
//!
//! Scalars are signed sums of `c`, `c*z^e`, `z^e` where `c` is an integer or
//! `p/q` and `z` is the primitive root of unity of the declared order.
//! Polynomial terms additionally multiply in variables: `-3/2*z^2*x^2*y`.
//! A parenthesised scalar may stand in for `c`: `(1 + z)*x`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::field::Field;
use super::{Cyclotomic, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at column {column} in `{input}`")]
pub struct LiteralError {
    pub input: String,
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

/// One parsed term: coefficient and exponent vector over the given variables.
pub type RawTerm = (Cyclotomic, Vec<u32>);

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    order: u32,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> LiteralError {
        LiteralError {
            input: self.src.to_string(),
            column: self.pos + 1,
            message: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, LiteralError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse as integer"))
    }

    fn exponent(&mut self, allow_negative: bool) -> Result<i64, LiteralError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let neg = self.eat('-');
        if neg && !allow_negative {
            return Err(self.err("negative exponent on a variable"));
        }
        let at = self.pos;
        let v = self.integer()?;
        let v: i64 = v.try_into().map_err(|_| LiteralError {
            input: self.src.to_string(),
            column: at + 1,
            message: "exponent too large".into(),
        })?;
        Ok(if neg { -v } else { v })
    }

    fn identifier(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            if self.pos == start && self.chars[self.pos].is_ascii_digit() {
                return None;
            }
            self.pos += 1;
        }
        (start != self.pos).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn factor(&mut self, coeff: &mut Cyclotomic, exps: &mut [u32]) -> Result<(), LiteralError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let p = self.integer()?;
                let q = if self.eat('/') {
                    let at = self.pos;
                    let q = self.integer()?;
                    if q.is_zero() {
                        return Err(LiteralError {
                            input: self.src.to_string(),
                            column: at + 1,
                            message: "zero denominator".into(),
                        });
                    }
                    q
                } else {
                    BigInt::one()
                };
                *coeff = coeff.mul(&Cyclotomic::from_rational(Rational::new(p, q)));
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                let mut s = Cyclotomic::zero();
                for (c, e) in inner {
                    if e.iter().any(|&k| k > 0) {
                        return Err(self.err("parenthesised coefficient must be a scalar"));
                    }
                    s = s.add(&c);
                }
                *coeff = coeff.mul(&s);
            }
            Some(_) => {
                let at = self.pos;
                let Some(name) = self.identifier() else {
                    return Err(self.err("expected number, `z`, variable or `(`"));
                };
                if name == "z" {
                    let e = self.exponent(true)?;
                    *coeff = coeff.mul(&Cyclotomic::zeta(self.order, e));
                } else if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    let e = self.exponent(false)?;
                    exps[i] += e as u32;
                } else {
                    return Err(LiteralError {
                        input: self.src.to_string(),
                        column: at + 1,
                        message: format!("unknown symbol `{name}`"),
                    });
                }
            }
            None => return Err(self.err("unexpected end of input")),
        }
        Ok(())
    }

    fn term(&mut self, n: usize) -> Result<RawTerm, LiteralError> {
        let mut coeff = Cyclotomic::one();
        let mut exps = vec![0u32; n];
        self.factor(&mut coeff, &mut exps)?;
        while self.eat('*') {
            self.factor(&mut coeff, &mut exps)?;
        }
        Ok((coeff, exps))
    }

    fn sum(&mut self) -> Result<Vec<RawTerm>, LiteralError> {
        let n = self.vars.len();
        let mut out = Vec::new();
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let (c, e) = self.term(n)?;
            out.push((if neg { c.neg() } else { c }, e));
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(out)
    }
}

/// Parses a sum of terms over the given variable names.
pub fn parse_terms(src: &str, order: u32, vars: &[String]) -> Result<Vec<RawTerm>, LiteralError> {
    let mut p = Parser {
        src,
        chars: src.chars().collect(),
        pos: 0,
        order: order.max(1),
        vars,
    };
    if p.peek().is_none() {
        return Err(p.err("empty literal"));
    }
    let terms = p.sum()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(terms)
}

/// Parses a scalar literal in Q(zeta_order).
pub fn parse_scalar(src: &str, order: u32) -> Result<Cyclotomic, LiteralError> {
    let terms = parse_terms(src, order, &[])?;
    let mut s = Cyclotomic::zero();
    for (c, _) in terms {
        s = s.add(&c);
    }
    // keep the declared order so that equal inputs have equal layouts
    if order > 1 && s.order() != order && order % s.order() == 0 {
        s = s.lift(order);
    }
    Ok(s)
}

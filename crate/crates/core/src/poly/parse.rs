//! Text parser for polynomials.
//!
//! Grammar: terms joined by `+`/`-`; a term is an optional coefficient and
//! `*`-joined powers like `x0^7`. Coefficients are integers, or bracketed
//! coefficient vectors `[a,b]` over extension fields. Whitespace is ignored.

use crate::error::{AlgebraError, Result};
use crate::field::FieldElement;

use super::{Monomial, Polynomial, Ring};

struct Parser<'a> {
    ring: &'a Ring,
    bytes: &'a [u8],
    pos: usize,
}

pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let poly = p.expression()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            Some(b'+') => {
                self.pos += 1;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(op) = self.peek() {
            let sub = match op {
                b'+' => false,
                b'-' => true,
                _ => break,
            };
            self.pos += 1;
            let t = self.term()?;
            acc = if sub { acc.sub(&t)? } else { acc.add(&t)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let field = self.ring.field().clone();
        let mut coeff = field.one();
        let mut exps = vec![0u32; self.ring.nvars()];
        let mut any = false;
        loop {
            match self.peek() {
                Some(b'[') => {
                    coeff = field.mul(&coeff, &self.bracket_coeff()?);
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer()?;
                    coeff = field.mul(&coeff, &field.from_int(n));
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let (i, e) = self.var_power()?;
                    exps[i] = exps[i]
                        .checked_add(e)
                        .ok_or(AlgebraError::DegreeOverflow)?;
                }
                _ => {
                    if !any {
                        return Err(self.error("expected a term"));
                    }
                    break;
                }
            }
            any = true;
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        Ok(self
            .ring
            .monomial(Monomial::from_exponents(&exps)?, coeff))
    }

    fn bracket_coeff(&mut self) -> Result<FieldElement> {
        let field = self.ring.field().clone();
        self.pos += 1; // consume '['
        let mut coeffs = Vec::new();
        loop {
            match self.peek() {
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                Some(b',') if !coeffs.is_empty() => {
                    self.pos += 1;
                    coeffs.push(self.integer()?);
                }
                Some(c) if c.is_ascii_digit() || c == b'-' => {
                    if !coeffs.is_empty() {
                        return Err(self.error("expected `,` or `]`"));
                    }
                    coeffs.push(self.integer()?);
                }
                _ => return Err(self.error("malformed bracketed coefficient")),
            }
        }
        field.from_coeffs(&coeffs)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let mut sign = 1i64;
        if self.bytes.get(self.pos) == Some(&b'-') {
            sign = -1;
            self.pos += 1;
        }
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse::<i64>()
            .map(|n| sign * n)
            .map_err(|_| self.error("integer out of range"))
    }

    fn var_power(&mut self) -> Result<(usize, u32)> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let idx = self
            .ring
            .var_index(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.integer()?;
            if n < 0 {
                return Err(self.error("negative exponent"));
            }
            exp = u32::try_from(n).map_err(|_| AlgebraError::DegreeOverflow)?;
        }
        Ok((idx, exp))
    }
}

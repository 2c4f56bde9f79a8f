//! Recursive-descent parser for scalar expressions, evaluated directly in a backend.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' ['-'|'+'] integer)?
//! atom   := number | 'q' | 'd' | '[' ['-'] integer ']' | '(' expr ')'
//! ```

use super::{BackendKind, Field, ScalarBackend};
use crate::error::{Error, Result};

pub fn parse_expression<S: Field>(s: &str, backend: &ScalarBackend<S>) -> Result<S> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        backend,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a, S: Field> {
    src: &'a [u8],
    pos: usize,
    backend: &'a ScalarBackend<S>,
}

impl<S: Field> Parser<'_, S> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<S> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<S> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = acc
                    .div(&rhs)
                    .map_err(|_| Error::parse(at, "division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<S> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<S> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let at = self.pos;
        let e = self.integer()?;
        let e = if neg { -e } else { e };
        base.powi(e)
            .map_err(|_| Error::parse(at, "negative power of a non-invertible value"))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::parse(start, "integer out of range"))
    }

    fn atom(&mut self) -> Result<S> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(self.backend.q.clone())
            }
            Some(b'd') => {
                self.pos += 1;
                Ok(self.backend.d.clone())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'[') => {
                self.pos += 1;
                let neg = self.eat(b'-');
                let k = self.integer()?;
                self.expect(b']')?;
                Ok(self.backend.quantum_integer(if neg { -k } else { k }))
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) => Err(Error::parse(
                self.pos,
                format!("unexpected character `{}`", c as char),
            )),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<S> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let has_frac = self.src.get(self.pos) == Some(&b'.');
        if has_frac {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if S::KIND == BackendKind::Float {
            return S::parse(&self.backend.ctx, text);
        }
        let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
        let digits = format!("{int_part}{frac_part}");
        let mut value = self.backend.zero();
        let ten = self.backend.int(10);
        for ch in digits.bytes() {
            value = value.mul(&ten).add(&self.backend.int((ch - b'0') as i64));
        }
        if !frac_part.is_empty() {
            let scale = ten.pow(frac_part.len() as u32);
            value = value.div(&scale)?;
        }
        Ok(value)
    }
}

//! Surd literals such as `-1/6`, `sqrt(2)/6`, `1/12*sqrt(6)` or
//! `(-10-sqrt(30))/60`.
//!
//! Accepted grammar (whitespace allowed between tokens):
//!
//! ```text
//! literal := '(' expr ')' ('/' uint)? | expr
//! expr    := sign? term (('+' | '-') term)*
//! term    := rat ('*'? sqrt)? | sqrt ('/' uint)?
//! sqrt    := 'sqrt(' uint ')'
//! rat     := uint ('/' uint)?
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::exact::{ExactScalar, RADICANDS};
use super::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurdError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("radicand {radicand} at position {pos} has square-free part not dividing 30")]
    Radicand { pos: usize, radicand: u64 },
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), SurdError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, message: impl Into<String>) -> SurdError {
        SurdError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn starts_sqrt(&mut self) -> bool {
        self.skip_ws();
        self.bytes[self.pos..].starts_with(b"sqrt")
    }

    fn uint(&mut self) -> Result<BigInt, SurdError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected unsigned integer"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string parses"))
    }

    fn denominator(&mut self) -> Result<BigInt, SurdError> {
        let pos = self.pos;
        let d = self.uint()?;
        if d.is_zero() {
            return Err(SurdError::Syntax {
                pos,
                message: "zero denominator".into(),
            });
        }
        Ok(d)
    }

    fn sqrt(&mut self) -> Result<ExactScalar, SurdError> {
        self.skip_ws();
        self.pos += 4;
        self.expect(b'(')?;
        self.skip_ws();
        let pos = self.pos;
        let n = self.uint()?;
        self.expect(b')')?;
        let n: u64 = n.try_into().map_err(|_| SurdError::Radicand { pos, radicand: u64::MAX })?;
        sqrt_of(n).ok_or(SurdError::Radicand { pos, radicand: n })
    }

    fn term(&mut self) -> Result<ExactScalar, SurdError> {
        if self.starts_sqrt() {
            let root = self.sqrt()?;
            if self.eat(b'/') {
                let d = self.denominator()?;
                return Ok(root * ExactScalar::rational(BigRational::new(BigInt::one(), d)));
            }
            return Ok(root);
        }
        let num = self.uint()?;
        let mut value = BigRational::from_integer(num);
        if self.eat(b'/') {
            let d = self.denominator()?;
            value /= BigRational::from_integer(d);
        }
        let coeff = ExactScalar::rational(value);
        if self.eat(b'*') {
            if !self.starts_sqrt() {
                return Err(self.error("expected 'sqrt(' after '*'"));
            }
            return Ok(coeff * self.sqrt()?);
        }
        if self.starts_sqrt() {
            return Ok(coeff * self.sqrt()?);
        }
        Ok(coeff)
    }

    fn expr(&mut self) -> Result<ExactScalar, SurdError> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn literal(&mut self) -> Result<ExactScalar, SurdError> {
        let value = if self.eat(b'(') {
            let inner = self.expr()?;
            self.expect(b')')?;
            if self.eat(b'/') {
                let d = self.denominator()?;
                inner * ExactScalar::rational(BigRational::new(BigInt::one(), d))
            } else {
                inner
            }
        } else {
            self.expr()?
        };
        if self.peek().is_some() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(value)
    }
}

/// `√n` as a field element, or `None` when the square-free part of `n` does
/// not divide 30.
fn sqrt_of(n: u64) -> Option<ExactScalar> {
    if n == 0 {
        return Some(ExactScalar::zero());
    }
    let mut rest = n;
    let mut outside: u64 = 1;
    let mut free: u64 = 1;
    let mut p = 2u64;
    while p * p <= rest {
        while rest.is_multiple_of(p * p) {
            rest /= p * p;
            outside *= p;
        }
        if rest.is_multiple_of(p) {
            rest /= p;
            free *= p;
        }
        p += 1;
    }
    free *= rest;
    if 30 % free != 0 {
        return None;
    }
    let base = ExactScalar::sqrt_basis(free as u32)?;
    Some(base * ExactScalar::rational(BigRational::from_integer(BigInt::from(outside))))
}

/// Parses a surd literal into an exact scalar.
pub fn parse_surd(text: &str) -> Result<ExactScalar, SurdError> {
    Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    }
    .literal()
}

fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical printed form; re-parses to an identical value.
pub(crate) fn format_surd(x: &ExactScalar) -> String {
    let mut out = String::new();
    for (q, radicand) in x.coords().iter().zip(RADICANDS) {
        if q.is_zero() {
            continue;
        }
        let negative = q.is_negative();
        let magnitude = q.abs();
        let body = if radicand == 1 {
            format_rational(&magnitude)
        } else if magnitude.is_one() {
            format!("sqrt({radicand})")
        } else {
            format!("{}*sqrt({radicand})", format_rational(&magnitude))
        };
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

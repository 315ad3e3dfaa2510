//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (("+"|"-") term)*      leading unary minus allowed
//! term   := factor ("*" factor)*
//! factor := atom ("^" uint)?
//! atom   := int | var | "(" expr ")"
//! var    := "x" uint
//! ```

use num_bigint::BigInt;

use super::multipoly::{IntMultiPoly, VarStyle};
use crate::error::{Error, Result};

/// Exponents above this are rejected to keep expansion bounded.
pub const MAX_EXPONENT: u32 = 256;

/// Parses `text` into expanded sparse form with `nvars` slots. Affine style
/// accepts `x1..xn`, projective style `x0..xn` (so `nvars` is `n` or `n + 1`).
pub fn parse_poly(text: &str, nvars: usize, style: VarStyle) -> Result<IntMultiPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
        style,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    style: VarStyle,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn uint(&mut self) -> Result<(BigInt, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok((s.parse().expect("digits parse"), start))
    }

    fn expr(&mut self) -> Result<IntMultiPoly> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<IntMultiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<IntMultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let (k, at) = self.uint()?;
            let k = u32::try_from(&k)
                .ok()
                .filter(|&k| k <= MAX_EXPONENT)
                .ok_or(Error::Syntax {
                    position: at,
                    message: format!("exponent exceeds {MAX_EXPONENT}"),
                })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<IntMultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                let at = self.pos;
                self.pos += 1;
                // no whitespace between x and its index
                if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.error("expected a variable index"));
                }
                let (idx, _) = self.uint()?;
                let idx = usize::try_from(&idx).unwrap_or(usize::MAX);
                let base = self.style.first_index();
                if idx < base || idx - base >= self.nvars {
                    return Err(Error::UnknownVariable {
                        index: idx,
                        position: at,
                    });
                }
                Ok(IntMultiPoly::variable(self.nvars, self.style, idx - base))
            }
            Some(c) if c.is_ascii_digit() => {
                let (n, _) = self.uint()?;
                Ok(IntMultiPoly::constant(self.nvars, self.style, n))
            }
            Some(_) => Err(self.error("expected an integer, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

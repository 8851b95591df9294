//! Recursive-descent parser for order expressions.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := 'w' | 'w*' | 'z' | 'q' | 'W' | natural | '(' expr ')'
//! ```
//!
//! `w*` is read as ω* unless the next non-blank character starts a factor,
//! in which case the `*` is multiplication: `w*2` is ω·2, `w* + 1` is ω*+1
//! and `w**2` is ω*·2.

use alloc::vec::Vec;
use core::fmt;

use super::OrderExpr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    LeadingStar,
    UnexpectedChar(char),
    UnexpectedEnd,
    UnclosedParen,
    NumberOverflow,
}

/// A syntax error at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Empty => f.write_str("empty expression"),
            ParseErrorKind::LeadingStar => {
                write!(f, "'*' at position {} has no left operand", self.position)
            }
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "unexpected character {c:?} at position {}", self.position)
            }
            ParseErrorKind::UnexpectedEnd => {
                write!(f, "expression ends early at position {}", self.position)
            }
            ParseErrorKind::UnclosedParen => {
                write!(f, "parenthesis opened at position {} is never closed", self.position)
            }
            ParseErrorKind::NumberOverflow => {
                write!(f, "number at position {} does not fit in 64 bits", self.position)
            }
        }
    }
}

impl core::error::Error for ParseError {}

pub fn parse_expr(text: &str) -> Result<OrderExpr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(ParseError { position: 0, kind: ParseErrorKind::Empty });
    }
    let e = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(e),
        Some(c) => Err(p.error_here(ParseErrorKind::UnexpectedChar(c as char))),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn starts_factor(c: u8) -> bool {
    matches!(c, b'w' | b'z' | b'q' | b'W' | b'(') || c.is_ascii_digit()
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.pos, kind }
    }

    fn expr(&mut self) -> Result<OrderExpr, ParseError> {
        let mut parts = Vec::new();
        parts.push(self.term()?);
        loop {
            self.skip_ws();
            if self.peek() != Some(b'+') {
                break;
            }
            self.pos += 1;
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { OrderExpr::Sum(parts) })
    }

    fn term(&mut self) -> Result<OrderExpr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() != Some(b'*') {
                break;
            }
            self.pos += 1;
            let rhs = self.factor()?;
            acc = OrderExpr::prod(acc, rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<OrderExpr, ParseError> {
        self.skip_ws();
        let Some(c) = self.peek() else {
            return Err(self.error_here(ParseErrorKind::UnexpectedEnd));
        };
        match c {
            b'w' => {
                self.pos += 1;
                let after_w = self.pos;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek().is_some_and(starts_factor) {
                        // Multiplication: leave the '*' for `term`.
                        self.pos = after_w;
                        return Ok(OrderExpr::Omega);
                    }
                    return Ok(OrderExpr::OmegaStar);
                }
                self.pos = after_w;
                Ok(OrderExpr::Omega)
            }
            b'z' => {
                self.pos += 1;
                Ok(OrderExpr::Zeta)
            }
            b'q' => {
                self.pos += 1;
                Ok(OrderExpr::Eta)
            }
            b'W' => {
                self.pos += 1;
                Ok(OrderExpr::BigW)
            }
            b'(' => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(ParseError { position: open, kind: ParseErrorKind::UnclosedParen });
                }
                self.pos += 1;
                Ok(inner)
            }
            b'*' => Err(self.error_here(ParseErrorKind::LeadingStar)),
            d if d.is_ascii_digit() => {
                let start = self.pos;
                let mut v: u64 = 0;
                while let Some(d) = self.peek().filter(u8::is_ascii_digit) {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(u64::from(d - b'0')))
                        .ok_or(ParseError { position: start, kind: ParseErrorKind::NumberOverflow })?;
                    self.pos += 1;
                }
                Ok(OrderExpr::Fin(v))
            }
            other => Err(self.error_here(ParseErrorKind::UnexpectedChar(other as char))),
        }
    }
}

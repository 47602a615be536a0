//! Curve expressions.
//!
//! ```text
//! curve := [ "y^2" "=" ] poly
//! poly  := [ "+" | "-" ] term { ( "+" | "-" ) term }
//! term  := int [ "*" ] [ xpow ] | xpow
//! xpow  := "x" [ "^" int ]
//! ```
//!
//! Spaces are allowed between tokens. Repeated powers are summed. The
//! result must be monic of odd degree 3, 5, 7 or 9 and squarefree.

use std::fmt;

use crate::curvecount::{CurveError, CurveModel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for CurveParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for CurveParseError {}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
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

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, CurveParseError> {
        Err(CurveParseError { position: self.pos, message: message.into() })
    }

    fn int(&mut self) -> Result<u64, CurveParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().map_err(|_| CurveParseError { position: start, message: format!("integer {text} is too large") })
    }
}

/// Parses `expr` into ascending coefficients; no curve validation.
pub fn parse_poly(expr: &str) -> Result<Vec<i64>, CurveParseError> {
    let mut lx = Lexer { src: expr.as_bytes(), pos: 0 };
    if lx.peek() == Some(b'y') {
        lx.pos += 1;
        if !(lx.eat(b'^') && lx.eat(b'2')) {
            return lx.fail("expected y^2");
        }
        if !lx.eat(b'=') {
            return lx.fail("expected '=' after y^2");
        }
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut first = true;
    loop {
        let sign = match lx.peek() {
            Some(b'+') => {
                lx.pos += 1;
                1
            }
            Some(b'-') => {
                lx.pos += 1;
                -1
            }
            None if first => return lx.fail("empty polynomial"),
            _ if first => 1,
            None => break,
            Some(c) => return lx.fail(format!("expected '+' or '-', found {:?}", c as char)),
        };
        first = false;
        let start = lx.pos;
        let mut coef: Option<u64> = None;
        if matches!(lx.peek(), Some(c) if c.is_ascii_digit()) {
            coef = Some(lx.int()?);
            lx.eat(b'*');
        }
        let power = if lx.eat(b'x') {
            if lx.eat(b'^') {
                let e = lx.int()?;
                if e > 64 {
                    return lx.fail(format!("exponent {e} is too large"));
                }
                e as usize
            } else {
                1
            }
        } else if coef.is_some() {
            0
        } else {
            return lx.fail("expected a term");
        };
        let value = i64::try_from(coef.unwrap_or(1))
            .ok()
            .and_then(|c| c.checked_mul(sign))
            .ok_or(CurveParseError { position: start, message: "coefficient out of range".into() })?;
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] = coeffs[power]
            .checked_add(value)
            .ok_or(CurveParseError { position: start, message: "coefficient out of range".into() })?;
    }
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Parses and validates a curve `y^2 = f(x)`, labelled by its canonical
/// expression.
pub fn parse_curve(expr: &str) -> Result<CurveModel, CurveParseError> {
    let coeffs = parse_poly(expr)?;
    let lead = expr.find(|c: char| !c.is_whitespace()).unwrap_or(0);
    let degree = coeffs.len().saturating_sub(1);
    let at = |message: String| CurveParseError { position: lead, message };
    if degree % 2 == 0 {
        return Err(at(format!("degree {degree} is even; expected 3, 5, 7 or 9")));
    }
    let label = CurveModel::new("", coeffs.clone())
        .map(|c| c.expression())
        .map_err(|e| match e {
            CurveError::NotSquarefree => at("f is not squarefree".into()),
            other => at(other.to_string()),
        })?;
    CurveModel::new(label, coeffs).map_err(|e| at(e.to_string()))
}

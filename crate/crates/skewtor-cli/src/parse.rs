//! Line-based frame-file parser.
//!
//! Grammar (UTF-8, one declaration per line, blank lines ignored):
//!
//! ```text
//! dim <n>
//! d e<k> = <term> (("+"|"-") <term>)*
//! term = [<rational>*]e<i>^e<j>      with i < j
//! ```
//!
//! Rationals are `p/q` or integers. Frames without a declaration are
//! closed. `d e<k> = 0` is accepted for an explicitly closed frame.

use skewtor::{int, GeomError, KForm, LieFrame, Scalar};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("frame is not integrable: d(d e{index}) contains {term}")]
    Jacobi { index: u8, term: String },
}

struct Cursor<'a> {
    text: &'a str,
    line: usize,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor { text, line, pos: 0 }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(' ') || self.rest().starts_with('\t') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{token}`")))
        }
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax { line: self.line, col: self.col(), msg: msg.to_string() }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let rest = self.rest();
        let neg = rest.starts_with('-');
        let digits_at = if neg { 1 } else { 0 };
        let len = rest[digits_at..].chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return Err(self.err("expected an integer"));
        }
        let s = &rest[..digits_at + len];
        let value: i64 = s.parse().map_err(|_| self.err("integer out of range"))?;
        self.pos += digits_at + len;
        Ok(value)
    }

    fn rational(&mut self) -> Result<Scalar, ParseError> {
        let p = self.integer()?;
        if self.eat("/") {
            let q = self.integer()?;
            if q == 0 {
                return Err(self.err("zero denominator"));
            }
            Ok(skewtor::rat(p, q))
        } else {
            Ok(int(p))
        }
    }

    fn frame_index(&mut self, dim: u8) -> Result<u8, ParseError> {
        self.expect("e")?;
        let v = self.integer()?;
        if v < 1 || v > dim as i64 {
            return Err(self.err(&format!("frame index out of range 1..={dim}")));
        }
        Ok(v as u8)
    }
}

/// Parses the frame-file grammar and validates the Jacobi identity.
pub fn parse_frame(text: &str) -> Result<LieFrame, ParseError> {
    let mut dim: Option<u8> = None;
    let mut diffs: Vec<KForm> = Vec::new();
    let mut seen: Vec<bool> = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = line_no + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut c = Cursor::new(raw.trim_end(), line);
        c.skip_ws();
        if dim.is_none() {
            c.expect("dim")?;
            c.skip_ws();
            let n = c.integer()?;
            if !(1..=9).contains(&n) {
                return Err(c.err("dimension must be between 1 and 9"));
            }
            c.skip_ws();
            if !c.rest().is_empty() {
                return Err(c.err("unexpected trailing input"));
            }
            dim = Some(n as u8);
            diffs = vec![KForm::zero(n as u8, 2); n as usize];
            seen = vec![false; n as usize];
            continue;
        }
        let n = dim.expect("set above");
        c.expect("d")?;
        c.skip_ws();
        let k = c.frame_index(n)?;
        if seen[k as usize - 1] {
            return Err(c.err(&format!("duplicate declaration for e{k}")));
        }
        seen[k as usize - 1] = true;
        c.skip_ws();
        c.expect("=")?;
        c.skip_ws();
        if c.eat("0") {
            c.skip_ws();
            if !c.rest().is_empty() {
                return Err(c.err("unexpected trailing input"));
            }
            continue;
        }
        let mut form = KForm::zero(n, 2);
        let mut first = true;
        loop {
            c.skip_ws();
            let negative = if first {
                c.eat("-") || {
                    c.eat("+");
                    false
                }
            } else if c.eat("+") {
                false
            } else if c.eat("-") {
                true
            } else {
                return Err(c.err("expected `+` or `-`"));
            };
            first = false;
            c.skip_ws();
            let coeff = if c.rest().starts_with('e') {
                int(1)
            } else {
                let r = c.rational()?;
                c.expect("*")?;
                r
            };
            let i = c.frame_index(n)?;
            c.expect("^")?;
            let j = c.frame_index(n)?;
            if i >= j {
                return Err(c.err("term indices must satisfy i < j"));
            }
            let signed = if negative { -coeff } else { coeff };
            form.add_term(&[i, j], signed);
            c.skip_ws();
            if c.rest().is_empty() {
                break;
            }
        }
        diffs[k as usize - 1] = form;
    }
    let n = dim.ok_or(ParseError::Syntax {
        line: 1,
        col: 1,
        msg: "missing `dim <n>` header".to_string(),
    })?;
    LieFrame::new(n, diffs).map_err(|e| match e {
        GeomError::JacobiFailure { index, term } => ParseError::Jacobi { index, term },
        other => ParseError::Syntax { line: 0, col: 0, msg: other.to_string() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use skewtor::models::nil6_frame;

    #[test]
    fn nil6_round_trip() {
        let text = "dim 6\nd e1 = e3^e6\nd e4 = e2^e6\nd e5 = e2^e3\n";
        let frame = parse_frame(text).unwrap();
        assert_eq!(frame, nil6_frame());
    }

    #[test]
    fn heisenberg() {
        let frame = parse_frame("dim 3\nd e1 = e2^e3\n").unwrap();
        assert_eq!(frame.dim(), 3);
    }

    #[test]
    fn rational_coefficients_and_sums() {
        let frame = parse_frame("dim 4\nd e1 = 1/2*e2^e3 - 3*e2^e4 + e3^e4\n").unwrap();
        let d1 = frame.differential_of(1);
        assert_eq!(d1.coeff(&[2, 3]), skewtor::rat(1, 2));
        assert_eq!(d1.coeff(&[2, 4]), skewtor::int(-3));
        assert_eq!(d1.coeff(&[3, 4]), skewtor::int(1));
    }

    #[test]
    fn jacobi_failure_reports_the_frame() {
        let text = "dim 3\nd e1 = e1^e2\nd e2 = e1^e3\n";
        match parse_frame(text) {
            Err(ParseError::Jacobi { index: 2, term }) => assert_eq!(term, "e123"),
            other => panic!("expected Jacobi failure, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_frame("dim 6\nd e1 = e3&e6\n") {
            Err(ParseError::Syntax { line: 2, col, .. }) => assert_eq!(col, 10, "position of `&`"),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse_frame("d e1 = e2^e3\n").is_err());
        assert!(parse_frame("dim 6\nd e1 = e6^e3\n").is_err());
        assert!(parse_frame("dim 6\nd e7 = e1^e2\n").is_err());
    }
}

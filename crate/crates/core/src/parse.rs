//! Position-carrying parse errors and a tiny cursor used by the text formats.

use std::fmt;

/// Error produced by the `FromStr` implementations in this crate.
///
/// `pos` is the byte offset into the input at which parsing failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Byte cursor over an input string.
pub(crate) struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(input: &'a str) -> Self {
        Cursor { input, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.bump();
                Ok(())
            }
            Some(got) => Err(ParseError::new(
                self.pos,
                format!("expected '{c}', found '{got}'"),
            )),
            None => Err(ParseError::new(
                self.pos,
                format!("expected '{c}', found end of input"),
            )),
        }
    }

    /// Consume `c` if present; report whether it was.
    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    /// Parse a decimal integer with optional leading minus.
    pub fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        self.eat('-');
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == digits_start {
            return Err(ParseError::new(self.pos, "expected a digit"));
        }
        let text = &self.input[start..self.pos];
        text.parse::<i64>()
            .map_err(|_| ParseError::new(start, format!("integer out of range: {text}")))
    }

    pub fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(ParseError::new(
                self.pos,
                format!("unexpected trailing input starting at '{c}'"),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_with_sign() {
        let mut c = Cursor::new("-42rest");
        assert_eq!(c.integer().unwrap(), -42);
        assert_eq!(c.rest(), "rest");
    }

    #[test]
    fn integer_requires_digit() {
        let mut c = Cursor::new("-x");
        let err = c.integer().unwrap_err();
        assert_eq!(err.pos, 1);
    }

    #[test]
    fn out_of_range_is_reported() {
        let mut c = Cursor::new("99999999999999999999");
        assert!(c.integer().is_err());
    }
}

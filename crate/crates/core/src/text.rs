//! Line tokenizer shared by the text file formats.

use std::str::FromStr;

use crate::error::{Error, Result};

/// A non-comment, non-blank line split on ASCII whitespace.
pub(crate) struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<&'a str>,
}

impl<'a> Line<'a> {
    pub fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(self.number, message)
    }

    /// Checks the leading keyword and the token count, including the keyword.
    pub fn expect(&self, keyword: &str, arity: usize) -> Result<()> {
        if self.tokens[0] != keyword {
            return Err(self.err(format!("expected '{keyword}', found '{}'", self.tokens[0])));
        }
        if self.tokens.len() != arity {
            return Err(self.err(format!(
                "'{keyword}' takes {} fields, found {}",
                arity - 1,
                self.tokens.len() - 1
            )));
        }
        Ok(())
    }

    pub fn field<T: FromStr>(&self, index: usize, what: &str) -> Result<T> {
        let token = self.tokens[index];
        token
            .parse()
            .map_err(|_| self.err(format!("invalid {what} '{token}'")))
    }
}

/// Lines of `text` with `#` comments and blank lines dropped. Line numbers are 1-based.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        Some(Line { number: i + 1, tokens: trimmed.split_ascii_whitespace().collect() })
    })
}

/// Error for a file that ended before the header appeared.
pub(crate) fn missing_header(text: &str, keyword: &str) -> Error {
    Error::parse(text.lines().count().max(1), format!("missing '{keyword}' header"))
}

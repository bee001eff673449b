//! Validated input strings.
//!
//! Every string analysed by this crate ends with the reserved end-marker
//! byte `$` (0x24), which must occur exactly once. Positions are 1-based
//! throughout the crate and ranges are inclusive on both ends.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// The reserved terminator byte.
pub const END_MARKER: u8 = b'$';

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("text is empty")]
    Empty,
    #[error("text does not end with the end-marker '$'")]
    MissingEndMarker,
    #[error("end-marker '$' occurs before the final position (byte offset {0})")]
    InteriorEndMarker(usize),
}

/// A `$`-terminated byte string with 1-based indexing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Text {
    bytes: Vec<u8>,
}

impl Text {
    /// Validates a complete string, end-marker included.
    pub fn new(bytes: Vec<u8>) -> Result<Self, TextError> {
        if bytes.is_empty() {
            return Err(TextError::Empty);
        }
        if *bytes.last().unwrap() != END_MARKER {
            return Err(TextError::MissingEndMarker);
        }
        if let Some(pos) = bytes[..bytes.len() - 1]
            .iter()
            .position(|&b| b == END_MARKER)
        {
            return Err(TextError::InteriorEndMarker(pos));
        }
        Ok(Text { bytes })
    }

    /// Wraps raw content that must not contain `$` and appends the marker.
    pub fn from_content(content: &[u8]) -> Result<Self, TextError> {
        if let Some(pos) = content.iter().position(|&b| b == END_MARKER) {
            return Err(TextError::InteriorEndMarker(pos));
        }
        let mut bytes = content.to_vec();
        bytes.push(END_MARKER);
        Text::new(bytes)
    }

    /// Parses a literal as typed on a command line: appends `$` if absent.
    pub fn parse_literal(s: &str) -> Result<Self, TextError> {
        let b = s.as_bytes();
        if b.last() == Some(&END_MARKER) {
            Text::new(b.to_vec())
        } else {
            Text::from_content(b)
        }
    }

    /// Length `n` including the end-marker.
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    /// The byte at 1-based position `i`.
    pub fn at(&self, i: usize) -> u8 {
        self.bytes[i - 1]
    }

    /// The inclusive 1-based range `T[i..j]`; empty when `j = i - 1`.
    pub fn seg(&self, i: usize, j: usize) -> &[u8] {
        debug_assert!(i >= 1 && j + 1 >= i && j <= self.len());
        &self.bytes[i - 1..j]
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Symbols occurring in the text, end-marker excluded.
    pub fn alphabet(&self) -> BTreeSet<u8> {
        self.bytes[..self.bytes.len() - 1].iter().copied().collect()
    }

    /// Alphabet size, end-marker excluded.
    pub fn sigma(&self) -> usize {
        self.alphabet().len()
    }
}

impl fmt::Debug for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Text({})", render_bytes(&self.bytes))
    }
}

impl fmt::Display for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_bytes(&self.bytes))
    }
}

/// Renders bytes for human-readable output: printable ASCII verbatim,
/// everything else as `\xHH`.
pub fn render_bytes(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len());
    for &b in bytes {
        if (0x20..=0x7e).contains(&b) && b != b'\\' {
            out.push(b as char);
        } else if b == b'\\' {
            out.push_str("\\\\");
        } else {
            out.push_str(&format!("\\x{:02x}", b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_terminated_string() {
        let t = Text::new(b"abc$".to_vec()).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.at(1), b'a');
        assert_eq!(t.at(4), b'$');
        assert_eq!(t.seg(2, 3), b"bc");
        assert_eq!(t.seg(3, 2), b"");
        assert_eq!(t.sigma(), 3);
    }

    #[test]
    fn marker_alone_is_valid() {
        let t = Text::new(b"$".to_vec()).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.sigma(), 0);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(Text::new(vec![]), Err(TextError::Empty));
        assert_eq!(Text::new(b"abc".to_vec()), Err(TextError::MissingEndMarker));
        assert_eq!(
            Text::new(b"a$b$".to_vec()),
            Err(TextError::InteriorEndMarker(1))
        );
        assert_eq!(
            Text::from_content(b"a$b"),
            Err(TextError::InteriorEndMarker(1))
        );
    }

    #[test]
    fn literal_appends_marker_once() {
        assert_eq!(Text::parse_literal("ab").unwrap().bytes(), b"ab$");
        assert_eq!(Text::parse_literal("ab$").unwrap().bytes(), b"ab$");
        assert!(Text::parse_literal("a$b").is_err());
    }
}

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Stand-in for the virtual end-of-text symbol inside BWT sequences.
///
/// Texts never contain 0x00, so a zero byte in a BWT sequence always means
/// the sentinel and it sorts below every real byte.
pub const SENTINEL: u8 = 0;

/// An immutable byte text with no NUL bytes.
///
/// The end sentinel is never stored; suffix comparisons on plain slices
/// already order a proper prefix before its extensions, which is exactly the
/// behaviour of a terminator smaller than every byte.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Text(Vec<u8>);

impl Text {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.contains(&SENTINEL) {
            return Err(Error::NulByte);
        }
        Ok(Text(bytes))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }
}

impl Deref for Text {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl AsRef<[u8]> for Text {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl TryFrom<&str> for Text {
    type Error = Error;

    fn try_from(s: &str) -> Result<Self> {
        Text::new(s.as_bytes())
    }
}

impl TryFrom<&[u8]> for Text {
    type Error = Error;

    fn try_from(s: &[u8]) -> Result<Self> {
        Text::new(s)
    }
}

impl fmt::Debug for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Text({:?})", String::from_utf8_lossy(&self.0))
    }
}

/// Renders a BWT sequence with `$` in place of the sentinel. Debugging and
/// test helper; ambiguous if the text itself contains `$`.
pub fn render_bwt(bwt: &[u8]) -> String {
    bwt.iter()
        .map(|&b| if b == SENTINEL { '$' } else { b as char })
        .collect()
}

/// Inverse of [`render_bwt`].
pub fn parse_bwt(s: &str) -> Vec<u8> {
    s.bytes()
        .map(|b| if b == b'$' { SENTINEL } else { b })
        .collect()
}

//! Offset unit conversion for external services.

use serde::{Deserialize, Serialize};

/// How an external service counts text offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OffsetUnit {
    Byte,
    #[default]
    Codepoint,
    Utf16,
}

impl OffsetUnit {
    /// Converts an offset in this unit to a byte offset into `text`.
    /// Returns `None` when the offset lies beyond the end of the text.
    pub fn to_byte(self, text: &str, offset: usize) -> Option<usize> {
        match self {
            OffsetUnit::Byte => {
                (offset <= text.len() && text.is_char_boundary(offset)).then_some(offset)
            }
            OffsetUnit::Codepoint => {
                if offset == 0 {
                    return Some(0);
                }
                text.char_indices()
                    .map(|(b, _)| b)
                    .chain(std::iter::once(text.len()))
                    .nth(offset)
            }
            OffsetUnit::Utf16 => {
                let mut units = 0;
                for (b, c) in text.char_indices() {
                    if units == offset {
                        return Some(b);
                    }
                    units += c.len_utf16();
                    if units > offset {
                        return None;
                    }
                }
                (units == offset).then_some(text.len())
            }
        }
    }

    /// Converts a byte offset into this unit.
    pub fn from_byte(self, text: &str, byte: usize) -> usize {
        let prefix = &text[..byte.min(text.len())];
        match self {
            OffsetUnit::Byte => prefix.len(),
            OffsetUnit::Codepoint => prefix.chars().count(),
            OffsetUnit::Utf16 => prefix.encode_utf16().count(),
        }
    }
}

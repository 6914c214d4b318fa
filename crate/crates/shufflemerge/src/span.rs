//! Contiguous index ranges within a key sequence.

use std::ops::Range;

/// A contiguous run of positions, `start..start + len`, inside some slice.
///
/// A `Span` is plain data; it does not borrow the slice it describes.
/// Validity (`start + len` within the slice) is enforced where the span is
/// actually used to index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Span {
    /// Zero-based index of the first position.
    pub start: usize,
    /// Number of positions covered; may be zero.
    pub len: usize,
}

impl Span {
    pub fn new(start: usize, len: usize) -> Self {
        Span { start, len }
    }

    pub fn from_range(r: Range<usize>) -> Self {
        Span {
            start: r.start,
            len: r.end - r.start,
        }
    }

    /// One past the last covered position.
    pub fn end(self) -> usize {
        self.start + self.len
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn range(self) -> Range<usize> {
        self.start..self.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_round_trip() {
        let s = Span::from_range(3..9);
        assert_eq!(s, Span::new(3, 6));
        assert_eq!(s.end(), 9);
        assert_eq!(s.range(), 3..9);
        assert!(!s.is_empty());
        assert!(Span::new(5, 0).is_empty());
    }
}

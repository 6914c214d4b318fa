//! In-place, stable merging and sorting built on the perfect shuffle.
//!
//! The merge here starts by interleaving the two sorted runs, on the bet that
//! a single shuffle leaves most elements close to their final position, and
//! then repairs the result with short scans, uninterleaves and rotations.
//!
//! Characteristics:
//!
//! - In place: no allocation after entry, auxiliary state a constant number
//!   of index words.
//! - Stable: equal keys come out in input order, left run first.
//! - Comparisons are linear in the total length. Element moves are linear
//!   plus the cost of carrying displaced runs: one rotation per step of the
//!   single-origin buffer, whose size tracks how far the two runs' elements
//!   are interleaved out of place. Nearly-separated runs merge in linear
//!   time; uniformly random interleavings cost around `n^1.5` moves; the
//!   worst case is quadratic.
//! - Fully instrumented: every entry point has a counted variant that reports
//!   comparisons, element moves, rotations and scan statistics for exactly
//!   that call.
//!
//! ```
//! let mut v = vec![1, 4, 7, 2, 3, 9];
//! shufflemerge::merge(&mut v, 3);
//! assert_eq!(v, [1, 2, 3, 4, 7, 9]);
//!
//! let mut v = vec![5, 1, 4, 2, 3];
//! shufflemerge::sort(&mut v);
//! assert_eq!(v, [1, 2, 3, 4, 5]);
//! ```
//!
//! The building blocks are public: [`shuffle`] holds the cycle-leader
//! interleave and its inverse, [`rotate`] the triple-reversal rotations. The
//! guide under [`_guide`] walks through how the pieces fit together; its
//! chapters double as this crate's documentation tests.

mod count;
mod span;

pub mod merge;
pub mod rotate;
pub mod shuffle;

pub mod _guide;

pub use count::{CostCounters, Histogram, Tally};
pub use merge::{
    check_invariants, merge, merge_by, merge_by_counted, merge_with, merge_with_scan_rule,
    should_extract, sort, sort_by, sort_by_counted, sort_with, Direction, MergeObserver,
    MergeState, Origin, ScanRule,
};
pub use span::Span;

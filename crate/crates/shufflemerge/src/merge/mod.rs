//! Stable in-place merging and sorting.
//!
//! [`merge_by`] joins two adjacent sorted runs of any lengths. Equal-length
//! runs go straight to the inner engine; unequal runs are handled by an
//! iterative outer loop that trims the longer run to match, merges the core
//! with a forward or backward pass, and continues with the engine's leftover
//! buffer against the trimmed piece. The trimmed piece is never moved or
//! copied, so control state stays a constant number of words.
//!
//! [`sort_by`] is the bottom-up merge sort this yields: run widths 1, 2, 4,
//! ... with the final partial run merged against its neighbour as is.

mod check;
mod engine;

use std::cmp;

use crate::count::{CostCounters, Tally};
use crate::span::Span;

pub use check::check_invariants;
pub use engine::{should_extract, Direction, MergeObserver, MergeState, Origin, ScanRule};

use engine::Engine;

/// Algorithm 2's outer loop: trim, run the engine, continue on buffer + trim.
fn merge_runs<T, F, C, O>(
    a: &mut [T],
    lo: usize,
    mid: usize,
    hi: usize,
    less: &mut F,
    tally: &mut C,
    observer: &mut O,
    rule: ScanRule,
) where
    F: FnMut(&T, &T) -> bool,
    C: Tally,
    O: MergeObserver<T>,
{
    let mut engine = Engine {
        a,
        less,
        tally,
        observer,
        rule,
    };
    let mut left = Span::from_range(lo..mid);
    let mut right = Span::from_range(mid..hi);
    loop {
        engine.tally.outer_iteration();
        if left.is_empty() || right.is_empty() {
            return;
        }
        debug_assert_eq!(left.end(), right.start);
        let live = left.len + right.len;
        if right.len > left.len {
            // Trim a suffix off the right run; merge the equal-length core
            // forward. If the leftover buffer is still left-origin, nothing
            // relates it to the trimmed suffix yet: merge those two next.
            let tail = Span::new(right.start + left.len, right.len - left.len);
            let (buffer, origin) = engine.merge_forward(left.start, tail.start, Origin::Left);
            if origin != Origin::Left {
                // Right-origin buffer: the suffix holds the largest
                // right-run keys, so everything is already in place.
                return;
            }
            left = buffer;
            right = tail;
        } else if left.len > right.len {
            // Mirror: trim a prefix off the left run, merge backward.
            let head = Span::new(left.start, left.len - right.len);
            let (buffer, origin) = engine.merge_backward(head.end(), right.end(), Origin::Right);
            if origin != Origin::Right {
                return;
            }
            left = head;
            right = buffer;
        } else {
            engine.merge_forward(left.start, right.end(), Origin::Left);
            return;
        }
        // Each trip strictly shrinks the live window, which bounds the loop.
        debug_assert!(left.len + right.len < live);
    }
}

fn sort_runs<T, F, C, O>(a: &mut [T], less: &mut F, tally: &mut C, observer: &mut O)
where
    F: FnMut(&T, &T) -> bool,
    C: Tally,
    O: MergeObserver<T>,
{
    let n = a.len();
    let mut width = 1;
    while width < n {
        let mut lo = 0;
        while lo + width < n {
            let hi = cmp::min(lo + 2 * width, n);
            merge_runs(
                a,
                lo,
                lo + width,
                hi,
                less,
                tally,
                observer,
                ScanRule::ClipOddTail,
            );
            lo += 2 * width;
        }
        width *= 2;
    }
}

/// Merge the two adjacent sorted runs `a[..mid]` and `a[mid..]` in place.
///
/// The result is sorted and stable: equal keys keep their relative order,
/// with the left run's elements first. Either run may be empty. Beyond the
/// slice itself the merge allocates nothing and keeps a constant number of
/// index words.
///
/// Both runs must already be sorted under `<`; feeding unsorted runs leaves
/// the slice in an unspecified permutation of its input.
///
/// Panics if `mid > a.len()`.
///
/// ```
/// let mut v = vec![2, 4, 9, 1, 3, 5, 8];
/// shufflemerge::merge(&mut v, 3);
/// assert_eq!(v, [1, 2, 3, 4, 5, 8, 9]);
/// ```
pub fn merge<T: Ord>(a: &mut [T], mid: usize) {
    merge_by(a, mid, |x, y| x < y);
}

/// [`merge`] under a caller-supplied strict order.
///
/// `less` must be a strict weak ordering; "equal" below means neither
/// `less(x, y)` nor `less(y, x)`.
pub fn merge_by<T, F>(a: &mut [T], mid: usize, mut less: F)
where
    F: FnMut(&T, &T) -> bool,
{
    merge_with(a, mid, &mut less, &mut (), &mut ());
}

/// [`merge_by`] with operation counting; returns the counter snapshot for
/// exactly this invocation.
pub fn merge_by_counted<T, F>(a: &mut [T], mid: usize, mut less: F) -> CostCounters
where
    F: FnMut(&T, &T) -> bool,
{
    let mut counters = CostCounters::new();
    merge_with(a, mid, &mut less, &mut counters, &mut ());
    counters
}

/// Fully general merge entry point: explicit tally and observer.
pub fn merge_with<T, F, C, O>(
    a: &mut [T],
    mid: usize,
    less: &mut F,
    tally: &mut C,
    observer: &mut O,
) where
    F: FnMut(&T, &T) -> bool,
    C: Tally,
    O: MergeObserver<T>,
{
    merge_with_scan_rule(a, mid, less, tally, observer, ScanRule::ClipOddTail);
}

/// [`merge_with`] with a selectable scan rule.
///
/// Only [`ScanRule::ClipOddTail`] merges correctly; the other variant exists
/// for harnesses that want to exhibit the failure mode of a scan truncated to
/// even lengths.
pub fn merge_with_scan_rule<T, F, C, O>(
    a: &mut [T],
    mid: usize,
    less: &mut F,
    tally: &mut C,
    observer: &mut O,
    rule: ScanRule,
) where
    F: FnMut(&T, &T) -> bool,
    C: Tally,
    O: MergeObserver<T>,
{
    assert!(mid <= a.len(), "mid out of bounds");
    let hi = a.len();
    merge_runs(a, 0, mid, hi, less, tally, observer, rule);
}

/// Sort `a` in place, stably, by repeated in-place merging.
///
/// ```
/// let mut v = vec![3, 1, 2];
/// shufflemerge::sort(&mut v);
/// assert_eq!(v, [1, 2, 3]);
/// ```
pub fn sort<T: Ord>(a: &mut [T]) {
    sort_by(a, |x, y| x < y);
}

/// [`sort`] under a caller-supplied strict order.
pub fn sort_by<T, F>(a: &mut [T], mut less: F)
where
    F: FnMut(&T, &T) -> bool,
{
    sort_runs(a, &mut less, &mut (), &mut ());
}

/// [`sort_by`] with operation counting.
pub fn sort_by_counted<T, F>(a: &mut [T], mut less: F) -> CostCounters
where
    F: FnMut(&T, &T) -> bool,
{
    let mut counters = CostCounters::new();
    sort_runs(a, &mut less, &mut counters, &mut ());
    counters
}

/// Fully general sort entry point: explicit tally and observer.
pub fn sort_with<T, F, C, O>(a: &mut [T], less: &mut F, tally: &mut C, observer: &mut O)
where
    F: FnMut(&T, &T) -> bool,
    C: Tally,
    O: MergeObserver<T>,
{
    sort_runs(a, less, tally, observer);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_reversed_runs() {
        let mut v = vec![4, 5, 6, 1, 2, 3];
        merge(&mut v, 3);
        assert_eq!(v, [1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn merge_with_an_empty_side() {
        let mut v = vec![1, 2];
        merge(&mut v, 0);
        assert_eq!(v, [1, 2]);
        merge(&mut v, 2);
        assert_eq!(v, [1, 2]);
        let mut e: Vec<i32> = vec![];
        merge(&mut e, 0);
        assert!(e.is_empty());
    }

    #[test]
    fn merge_counts_one_comparison_for_singletons() {
        let mut v = vec![1, 2];
        let c = merge_by_counted(&mut v, 1, |x, y| x < y);
        assert_eq!(v, [1, 2]);
        assert_eq!(c.comparisons, 1);
        assert_eq!(c.outer_iterations, 1);
    }

    #[test]
    fn merge_unequal_runs() {
        let mut v = vec![10, 11, 1, 2, 3, 4];
        merge(&mut v, 2);
        assert_eq!(v, [1, 2, 3, 4, 10, 11]);

        let mut v = vec![1, 2, 3, 4, 0, 5];
        merge(&mut v, 4);
        assert_eq!(v, [0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn sorted_runs_merge_with_few_comparisons() {
        for n in [4usize, 16, 64, 256] {
            let mut v: Vec<usize> = (0..n).collect();
            let c = merge_by_counted(&mut v, n / 2, |x, y| x < y);
            assert!(v.is_sorted());
            assert!(
                c.comparisons <= n as u64,
                "n={n} comparisons={}",
                c.comparisons
            );
        }
    }

    #[test]
    fn sort_small() {
        let mut v = vec![3, 1, 2];
        sort(&mut v);
        assert_eq!(v, [1, 2, 3]);
    }

    #[test]
    fn sort_already_sorted_is_cheap_identity() {
        let n = 1024usize;
        let mut v: Vec<usize> = (0..n).collect();
        let c = sort_by_counted(&mut v, |x, y| x < y);
        assert!(v.iter().eq((0..n).collect::<Vec<_>>().iter()));
        let bound = (n as u64) * (n as u64).ilog2() as u64;
        assert!(
            c.comparisons <= bound,
            "comparisons={} bound={bound}",
            c.comparisons
        );
    }

    #[test]
    fn stability_on_tagged_duplicates() {
        // Left [1, 3, 3, 7], right [2, 3, 5]; payloads make equal keys
        // distinguishable but invisible to the order.
        let mut v: Vec<(i32, char)> = vec![
            (1, 'a'),
            (3, 'b'),
            (3, 'c'),
            (7, 'd'),
            (2, 'e'),
            (3, 'f'),
            (5, 'g'),
        ];
        merge_by(&mut v, 4, |x, y| x.0 < y.0);
        assert_eq!(
            v,
            [
                (1, 'a'),
                (2, 'e'),
                (3, 'b'),
                (3, 'c'),
                (3, 'f'),
                (5, 'g'),
                (7, 'd'),
            ]
        );
    }

    #[test]
    fn even_only_scan_rule_is_observable() {
        let mut v = vec![4, 5, 6, 1, 2, 3];
        let mut less = |x: &i32, y: &i32| x < y;
        merge_with_scan_rule(&mut v, 3, &mut less, &mut (), &mut (), ScanRule::EvenOnly);
        assert_ne!(v, [1, 2, 3, 4, 5, 6]);
    }
}

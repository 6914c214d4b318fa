//! The inner merge engine.
//!
//! A forward pass merges two equal-length adjacent sorted runs by first
//! interleaving them and then repairing the result left to right. Three
//! regions partition the window at every loop boundary:
//!
//! ```text
//! | sorted S | buffer P | shuffled Sh |
//! ```
//!
//! `S` is finished output. `P` is a sorted run whose elements all share one
//! origin (they all came from the same input run), tracked by a single flag.
//! `Sh` is still 2-ordered from the interleave, with origins alternating by
//! position. Each loop step either moves the buffer head into `S`, or scans a
//! prefix of `Sh`, uninterleaves it and rotates the extracted elements past
//! the buffer. The backward pass is the same machine reflected, used by the
//! outer layer when the left run is the longer one.
//!
//! No per-element origin is ever stored; the flag plus the loop invariants
//! carry all of it. Auxiliary state is a fixed handful of indices.

use std::cmp;

use crate::count::Tally;
use crate::rotate;
use crate::shuffle;
use crate::span::Span;

/// Which input run an element came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Left,
    Right,
}

impl Origin {
    pub fn complement(self) -> Origin {
        match self {
            Origin::Left => Origin::Right,
            Origin::Right => Origin::Left,
        }
    }
}

/// Scan direction of an inner merge pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Sorted output grows from the low end of the window.
    Forward,
    /// Sorted output grows from the high end of the window.
    Backward,
}

/// How a scan treats a shuffled region with an odd element left over.
///
/// `ClipOddTail` is the production rule: when every scanned element is
/// accepted and the shuffled region has odd length, the scanned prefix
/// absorbs the whole region. `EvenOnly` truncates the prefix to even length
/// instead; it exists only so the verification harness can demonstrate that
/// the truncating variant breaks the loop invariants (for instance on the
/// runs `[4, 5, 6]` and `[1, 2, 3]`), and must not be used for real merging.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanRule {
    ClipOddTail,
    EvenOnly,
}

/// Snapshot of the engine's region bookkeeping at a loop boundary.
///
/// Indices are absolute positions in the caller's slice. The three region
/// spans are adjacent and cover `window` exactly; for a [`Direction::Forward`]
/// pass they sit in the order sorted, buffer, shuffled, and reversed for a
/// backward pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeState {
    pub window: Span,
    pub sorted: Span,
    pub buffer: Span,
    pub shuffled: Span,
    /// Origin shared by every buffer element.
    pub origin: Origin,
    pub direction: Direction,
}

/// Hooks for watching an inner merge run. All methods default to no-ops; `()`
/// is the disabled observer. The verification harness uses this to re-check
/// the loop invariants against shadow origin tags after every step.
pub trait MergeObserver<T> {
    /// An inner pass is about to interleave `window`; the two halves are
    /// still contiguous.
    fn merge_started(&mut self, a: &[T], direction: Direction, window: Span) {
        let _ = (a, direction, window);
    }

    /// The engine is at a loop boundary (just after the interleave, and then
    /// after every step). The invariants are supposed to hold here.
    fn at_loop_boundary(&mut self, a: &[T], state: &MergeState) {
        let _ = (a, state);
    }
}

impl<T> MergeObserver<T> for () {}

/// The stability rule: must the shuffled-region element `sh_key` be emitted
/// before every current buffer element?
///
/// `origin` is the buffer's origin; the scanned element always has the
/// complementary one. A left-origin buffer keeps priority on ties, a
/// right-origin buffer yields it, so equal keys always come out in left run,
/// right run order.
pub fn should_extract<T, F>(sh_key: &T, buf_key: &T, origin: Origin, less: &mut F) -> bool
where
    F: FnMut(&T, &T) -> bool,
{
    match origin {
        Origin::Left => less(sh_key, buf_key),
        Origin::Right => !less(buf_key, sh_key),
    }
}

pub(crate) struct Engine<'a, T, F, C, O> {
    pub a: &'a mut [T],
    pub less: &'a mut F,
    pub tally: &'a mut C,
    pub observer: &'a mut O,
    pub rule: ScanRule,
}

impl<T, F, C, O> Engine<'_, T, F, C, O>
where
    F: FnMut(&T, &T) -> bool,
    C: Tally,
    O: MergeObserver<T>,
{
    /// Counted forward form of [`should_extract`] on positions.
    fn extract_forward(&mut self, sh: usize, buf: usize, origin: Origin) -> bool {
        self.tally.comparison();
        match origin {
            Origin::Left => (self.less)(&self.a[sh], &self.a[buf]),
            Origin::Right => !(self.less)(&self.a[buf], &self.a[sh]),
        }
    }

    /// Mirror rule: must the shuffled-region element at `sh` be emitted after
    /// every current buffer element? Ties still resolve left origin first,
    /// which here means a right-origin buffer yields only on strict order.
    fn extract_backward(&mut self, sh: usize, buf: usize, origin: Origin) -> bool {
        self.tally.comparison();
        match origin {
            Origin::Right => (self.less)(&self.a[buf], &self.a[sh]),
            Origin::Left => !(self.less)(&self.a[sh], &self.a[buf]),
        }
    }

    /// Count the alternating elements at `sh_start, sh_start + 2, ...` that
    /// pass the extraction test against the buffer head, stopping at the
    /// first failure. The caller has already tested the one at `sh_start`,
    /// so the result is at least 1; together the two perform the accepted
    /// count of comparisons, plus one if a failing element was seen.
    fn scan_forward(
        &mut self,
        buf_start: usize,
        sh_start: usize,
        hi: usize,
        origin: Origin,
    ) -> usize {
        let mut r = 1;
        let mut q = sh_start;
        while q + 2 < hi {
            q += 2;
            if self.extract_forward(q, buf_start, origin) {
                r += 1;
            } else {
                break;
            }
        }
        r
    }

    /// Mirror scan, walking `sh_end - 1, sh_end - 3, ...` down to `lo`.
    fn scan_backward(&mut self, buf_top: usize, sh_end: usize, lo: usize, origin: Origin) -> usize {
        let mut r = 1;
        let mut q = sh_end - 1;
        while q >= lo + 2 {
            q -= 2;
            if self.extract_backward(q, buf_top, origin) {
                r += 1;
            } else {
                break;
            }
        }
        r
    }

    fn boundary_forward(
        &mut self,
        lo: usize,
        hi: usize,
        buf_start: usize,
        sh_start: usize,
        origin: Origin,
    ) {
        let state = MergeState {
            window: Span::from_range(lo..hi),
            sorted: Span::from_range(lo..buf_start),
            buffer: Span::from_range(buf_start..sh_start),
            shuffled: Span::from_range(sh_start..hi),
            origin,
            direction: Direction::Forward,
        };
        self.observer.at_loop_boundary(self.a, &state);
    }

    fn boundary_backward(
        &mut self,
        lo: usize,
        hi: usize,
        sh_end: usize,
        buf_top: usize,
        origin: Origin,
    ) {
        let state = MergeState {
            window: Span::from_range(lo..hi),
            sorted: Span::from_range(buf_top + 1..hi),
            buffer: Span::from_range(sh_end..buf_top + 1),
            shuffled: Span::from_range(lo..sh_end),
            origin,
            direction: Direction::Backward,
        };
        self.observer.at_loop_boundary(self.a, &state);
    }

    /// Merge the equal-length sorted halves of `a[lo..hi]`, growing the
    /// sorted region from the low end. Returns the final buffer span (always
    /// non-empty) and the final origin flag. On return, everything left of
    /// the buffer is finished output that precedes every buffer element, and
    /// the buffer is the window's maximal trailing single-origin run: the
    /// outer loop needs all of it, since only elements bounded by one of the
    /// other origin are known to precede whatever the outer loop trimmed off.
    ///
    /// `origin0` names the origin of the elements of the window's left half
    /// within the enclosing problem; the outer layer passes `Left`.
    pub fn merge_forward(&mut self, lo: usize, hi: usize, origin0: Origin) -> (Span, Origin) {
        let n = hi - lo;
        debug_assert!(
            n >= 2 && n % 2 == 0,
            "window must be two equal non-empty runs"
        );
        self.observer
            .merge_started(self.a, Direction::Forward, Span::from_range(lo..hi));
        shuffle::interleave_counted(&mut self.a[lo..hi], self.tally);

        // The first element kept its place in the interleave, so it is the
        // left half's smallest and opens the buffer on its own.
        let mut buf_start = lo;
        let mut sh_start = lo + 1;
        let mut origin = origin0;
        self.boundary_forward(lo, hi, buf_start, sh_start, origin);

        while sh_start < hi {
            if !self.extract_forward(sh_start, buf_start, origin) {
                // The buffer head is next: emit it.
                buf_start += 1;
                if buf_start == sh_start {
                    // Buffer exhausted. Its successor is the shuffled head,
                    // which has the complementary origin.
                    sh_start += 1;
                    origin = origin.complement();
                }
            } else if hi - sh_start == 1 {
                // Lone shuffled element precedes the whole buffer: rotate it
                // in front.
                let seg = sh_start - buf_start + 1;
                rotate::rotate_right_counted(&mut self.a[buf_start..=sh_start], 1, self.tally);
                self.tally.rotation(seg as u64);
                buf_start += 1;
                sh_start += 1;
            } else {
                let sh_len = hi - sh_start;
                let mut r = self.scan_forward(buf_start, sh_start, hi, origin);
                // Did the scan exhaust the region rather than stop at a
                // failing element? Exhaustion means the region's length is 2r
                // or, with an odd tail, 2r - 1.
                let ran_off = 2 * r >= sh_len;
                let (d, emit_head) = match self.rule {
                    // If every alternating element passed and the region has
                    // odd length, take all of it (the clip rule). The buffer
                    // head leaves only when a failing element bounds it:
                    // without that bound it may still belong after keys the
                    // outer loop has trimmed away, so it stays in the buffer.
                    ScanRule::ClipOddTail => (cmp::min(2 * r, sh_len), !ran_off),
                    ScanRule::EvenOnly => {
                        r = cmp::min(r, sh_len / 2);
                        (2 * r, true)
                    }
                };
                self.tally.scan(r as u64);

                // Split the scanned prefix into the r accepted elements
                // (front) and the d - r buffer-origin ones (back), then move
                // the accepted block past the buffer.
                shuffle::uninterleave_counted(&mut self.a[sh_start..sh_start + d], self.tally);
                let seg = sh_start + r - buf_start;
                rotate::rotate_right_counted(&mut self.a[buf_start..sh_start + r], r, self.tally);
                self.tally.rotation(seg as u64);

                // The accepted block is final; so is the old buffer head when
                // it leaves.
                buf_start += if emit_head { r + 1 } else { r };
                sh_start += d;
                debug_assert!(buf_start < sh_start, "buffer must stay non-empty");
            }
            self.tally.loop_bottom((sh_start - buf_start) as u64);
            self.boundary_forward(lo, hi, buf_start, sh_start, origin);
        }
        (Span::from_range(buf_start..sh_start), origin)
    }

    /// Mirror of [`merge_forward`]: the sorted region grows from the high end
    /// and the final buffer sits at the window's low end. The outer layer
    /// passes `origin0 = Right`, the origin of the right half's last element.
    pub fn merge_backward(&mut self, lo: usize, hi: usize, origin0: Origin) -> (Span, Origin) {
        let n = hi - lo;
        debug_assert!(
            n >= 2 && n % 2 == 0,
            "window must be two equal non-empty runs"
        );
        self.observer
            .merge_started(self.a, Direction::Backward, Span::from_range(lo..hi));
        shuffle::interleave_counted(&mut self.a[lo..hi], self.tally);

        // The interleave fixed the last element too: the right half's
        // largest, which opens the buffer.
        let mut buf_top = hi - 1;
        let mut sh_end = hi - 1;
        let mut origin = origin0;
        self.boundary_backward(lo, hi, sh_end, buf_top, origin);

        while sh_end > lo {
            if !self.extract_backward(sh_end - 1, buf_top, origin) {
                buf_top -= 1;
                if buf_top + 1 == sh_end {
                    sh_end -= 1;
                    origin = origin.complement();
                }
            } else if sh_end - lo == 1 {
                let seg = buf_top - lo + 1;
                rotate::rotate_left_counted(&mut self.a[lo..=buf_top], 1, self.tally);
                self.tally.rotation(seg as u64);
                buf_top -= 1;
                sh_end -= 1;
            } else {
                let sh_len = sh_end - lo;
                let mut r = self.scan_backward(buf_top, sh_end, lo, origin);
                let ran_off = 2 * r >= sh_len;
                let (d, emit_head) = match self.rule {
                    ScanRule::ClipOddTail => (cmp::min(2 * r, sh_len), !ran_off),
                    ScanRule::EvenOnly => {
                        r = cmp::min(r, sh_len / 2);
                        (2 * r, true)
                    }
                };
                self.tally.scan(r as u64);

                // Mirror split: accepted elements to the back of the scanned
                // block (next to the buffer), buffer-origin ones to the front.
                shuffle::uninterleave_back_counted(&mut self.a[sh_end - d..sh_end], self.tally);
                let seg = buf_top + 1 - (sh_end - r);
                rotate::rotate_left_counted(&mut self.a[sh_end - r..=buf_top], r, self.tally);
                self.tally.rotation(seg as u64);

                buf_top -= if emit_head { r + 1 } else { r };
                sh_end -= d;
                debug_assert!(buf_top + 1 > sh_end, "buffer must stay non-empty");
            }
            self.tally.loop_bottom((buf_top + 1 - sh_end) as u64);
            self.boundary_backward(lo, hi, sh_end, buf_top, origin);
        }
        (Span::from_range(lo..buf_top + 1), origin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forward(a: &mut [i32], lo: usize, hi: usize, origin0: Origin) -> (Span, Origin) {
        let mut less = |x: &i32, y: &i32| x < y;
        Engine {
            a,
            less: &mut less,
            tally: &mut (),
            observer: &mut (),
            rule: ScanRule::ClipOddTail,
        }
        .merge_forward(lo, hi, origin0)
    }

    fn backward(a: &mut [i32], lo: usize, hi: usize, origin0: Origin) -> (Span, Origin) {
        let mut less = |x: &i32, y: &i32| x < y;
        Engine {
            a,
            less: &mut less,
            tally: &mut (),
            observer: &mut (),
            rule: ScanRule::ClipOddTail,
        }
        .merge_backward(lo, hi, origin0)
    }

    #[test]
    fn should_extract_tie_rule() {
        let mut less = |a: &i32, b: &i32| a < b;
        assert!(should_extract(&3, &5, Origin::Left, &mut less));
        assert!(!should_extract(&5, &5, Origin::Left, &mut less));
        assert!(should_extract(&5, &5, Origin::Right, &mut less));
    }

    /// Drive `scan_forward` on hand-built mid-merge layouts.
    #[test]
    fn scan_examples() {
        let mut less = |x: &i32, y: &i32| x < y;
        // Buffer [5], shuffled [2, 6, 3, 7, 9, 8]: 2 and 3 pass, 9 fails.
        let mut a = [5, 2, 6, 3, 7, 9, 8];
        let mut eng = Engine {
            a: &mut a,
            less: &mut less,
            tally: &mut (),
            observer: &mut (),
            rule: ScanRule::ClipOddTail,
        };
        assert_eq!(eng.scan_forward(0, 1, 7, Origin::Left), 2);

        // Buffer [4], shuffled [1, 5, 2, 6, 3]: every alternating element
        // passes and the region length is odd, the clip-rule case.
        let mut a = [4, 1, 5, 2, 6, 3];
        let mut eng = Engine {
            a: &mut a,
            less: &mut less,
            tally: &mut (),
            observer: &mut (),
            rule: ScanRule::ClipOddTail,
        };
        assert_eq!(eng.scan_forward(0, 1, 6, Origin::Left), 3);

        // Buffer [5, 6], shuffled [1, 9]: one passing element at an even
        // region boundary.
        let mut a = [5, 6, 1, 9];
        let mut eng = Engine {
            a: &mut a,
            less: &mut less,
            tally: &mut (),
            observer: &mut (),
            rule: ScanRule::ClipOddTail,
        };
        assert_eq!(eng.scan_forward(0, 2, 4, Origin::Left), 1);
    }

    /// Observer that records every loop-boundary snapshot.
    struct Recorder(Vec<(MergeState, Vec<i32>)>);

    impl MergeObserver<i32> for Recorder {
        fn at_loop_boundary(&mut self, a: &[i32], state: &MergeState) {
            self.0.push((*state, a.to_vec()));
        }
    }

    /// One clip-rule step: from buffer [4], shuffled [1, 5, 2, 6, 3] the
    /// whole region is scanned. The scan exhausts the region without a
    /// failing element, so the buffer keeps its head: [4, 5, 6].
    #[test]
    fn clip_rule_step_resolves_whole_region() {
        let mut v = vec![4, 5, 6, 1, 2, 3];
        let mut less = |x: &i32, y: &i32| x < y;
        let mut rec = Recorder(Vec::new());
        let (buf, origin) = Engine {
            a: &mut v,
            less: &mut less,
            tally: &mut (),
            observer: &mut rec,
            rule: ScanRule::ClipOddTail,
        }
        .merge_forward(0, 6, Origin::Left);

        // Initial boundary: the interleave put [4, 1, 5, 2, 6, 3] in place.
        let (init, init_win) = &rec.0[0];
        assert_eq!(init_win, &[4, 1, 5, 2, 6, 3]);
        assert_eq!(init.buffer, Span::new(0, 1));
        assert_eq!(init.shuffled, Span::new(1, 5));

        // A single step finishes the merge.
        assert_eq!(rec.0.len(), 2);
        let (after, after_win) = &rec.0[1];
        assert_eq!(after_win, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(after.sorted, Span::new(0, 3));
        assert_eq!(after.buffer, Span::new(3, 3));
        assert!(after.shuffled.is_empty());

        assert_eq!(buf, Span::new(3, 3));
        assert_eq!(v[buf.range()], [4, 5, 6]);
        assert_eq!(origin, Origin::Left);
    }

    /// When a scan exhausts the shuffled region, the buffer must retain every
    /// key that could still belong after a piece trimmed off by the outer
    /// loop: here 10 stays in the buffer rather than settling before it.
    #[test]
    fn ran_off_scan_keeps_buffer_head() {
        let mut v = vec![10, 11, 1, 2];
        let (buf, origin) = forward(&mut v, 0, 4, Origin::Left);
        assert_eq!(v, [1, 2, 10, 11]);
        assert_eq!(buf, Span::new(2, 2));
        assert_eq!(origin, Origin::Left);
    }

    /// Same retention after the origin flag has flipped: the final buffer is
    /// the maximal trailing run of the flipped origin.
    #[test]
    fn ran_off_scan_after_origin_flip() {
        let mut v = vec![1, 2, 3, 4];
        let (buf, origin) = forward(&mut v, 0, 4, Origin::Left);
        assert_eq!(v, [1, 2, 3, 4]);
        // 1 and 2 settle; 3 and 4 (both right-run keys) form the buffer.
        assert_eq!(buf, Span::new(2, 2));
        assert_eq!(origin, Origin::Right);
    }

    #[test]
    fn forward_merge_interleaved_runs() {
        let mut v = vec![1, 2, 3, 4];
        let (buf, _) = forward(&mut v, 0, 4, Origin::Left);
        assert_eq!(v, [1, 2, 3, 4]);
        assert!(!buf.is_empty());
        assert_eq!(buf.end(), 4);
    }

    #[test]
    fn forward_merge_on_inner_window() {
        // The engine works on a window of a larger slice.
        let mut v = vec![99, 4, 5, 6, 1, 2, 3, -7];
        forward(&mut v, 1, 7, Origin::Left);
        assert_eq!(v, [99, 1, 2, 3, 4, 5, 6, -7]);
    }

    #[test]
    fn backward_merge_singletons() {
        let mut v = vec![2, 1];
        let (buf, origin) = backward(&mut v, 0, 2, Origin::Right);
        assert_eq!(v, [1, 2]);
        assert_eq!(buf, Span::new(0, 1));
        assert_eq!(origin, Origin::Right);
    }

    #[test]
    fn backward_merge_ordered_runs() {
        let mut v = vec![1, 2, 3, 4, 5, 6];
        let (buf, origin) = backward(&mut v, 0, 6, Origin::Right);
        assert_eq!(v, [1, 2, 3, 4, 5, 6]);
        assert_eq!(buf.start, 0);
        assert!(!buf.is_empty());
        assert_eq!(origin, Origin::Left);
    }

    #[test]
    fn backward_merge_reversed_runs() {
        let mut v = vec![4, 5, 6, 1, 2, 3];
        let (buf, _) = backward(&mut v, 0, 6, Origin::Right);
        assert_eq!(v, [1, 2, 3, 4, 5, 6]);
        assert_eq!(buf.start, 0);
    }

    /// On distinct keys the backward pass must equal the forward pass run on
    /// the reversed window under the flipped order, reversed back.
    #[test]
    fn backward_is_reverse_conjugate_of_forward() {
        let mut state = 7u64;
        let mut rng = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state
        };
        for m in 1usize..=48 {
            // Distinct keys, random split into two sorted halves.
            let keys: Vec<u64> = (0..2 * m as u64).map(|i| i * 1000 + rng() % 997).collect();
            let mut picks: Vec<usize> = (0..2 * m).collect();
            for t in 0..m {
                let j = t + (rng() as usize) % (2 * m - t);
                picks.swap(t, j);
            }
            let mut left: Vec<u64> = picks[..m].iter().map(|&p| keys[p]).collect();
            let mut right: Vec<u64> = picks[m..].iter().map(|&p| keys[p]).collect();
            left.sort_unstable();
            right.sort_unstable();

            let mut direct: Vec<u64> = left.iter().chain(right.iter()).copied().collect();
            let mut less = |a: &u64, b: &u64| a < b;
            let (bwd_buf, bwd_origin) = Engine {
                a: &mut direct,
                less: &mut less,
                tally: &mut (),
                observer: &mut (),
                rule: ScanRule::ClipOddTail,
            }
            .merge_backward(0, 2 * m, Origin::Right);

            // Conjugate: reverse the window, swap the halves' roles, merge
            // forward under the flipped order, reverse back.
            let mut conj: Vec<u64> = right
                .iter()
                .rev()
                .chain(left.iter().rev())
                .copied()
                .collect();
            let mut flipped = |a: &u64, b: &u64| b < a;
            let (fwd_buf, fwd_origin) = Engine {
                a: &mut conj,
                less: &mut flipped,
                tally: &mut (),
                observer: &mut (),
                rule: ScanRule::ClipOddTail,
            }
            .merge_forward(0, 2 * m, Origin::Left);
            conj.reverse();

            assert_eq!(direct, conj, "m={m}");
            assert_eq!(bwd_origin, fwd_origin.complement(), "m={m}");
            assert_eq!(bwd_buf.len, fwd_buf.len, "m={m}");
            assert_eq!(bwd_buf.start, 2 * m - fwd_buf.end(), "m={m}");
        }
    }

    #[test]
    fn even_only_rule_breaks_reversed_runs() {
        let mut v = vec![4, 5, 6, 1, 2, 3];
        let mut less = |x: &i32, y: &i32| x < y;
        Engine {
            a: &mut v,
            less: &mut less,
            tally: &mut (),
            observer: &mut (),
            rule: ScanRule::EvenOnly,
        }
        .merge_forward(0, 6, Origin::Left);
        assert_ne!(
            v,
            [1, 2, 3, 4, 5, 6],
            "the truncating scan is expected to fail here"
        );
    }
}

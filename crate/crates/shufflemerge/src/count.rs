//! Operation counting.
//!
//! Every merge and sort entry point exists in a counted and an uncounted
//! flavour. The counted flavour threads a [`Tally`] implementation through the
//! whole computation and returns a [`CostCounters`] snapshot for exactly that
//! invocation; the uncounted flavour passes `()`, whose no-op hooks compile
//! away entirely. There is no global mutable tally.
//!
//! The cost unit is one element placement: a swap counts as two placements, so
//! a triple-reversal rotation of a segment of length `l` costs at most `2 l`.

/// Counting hooks invoked by the core algorithms.
///
/// All methods default to no-ops, so `()` serves as the disabled tally.
pub trait Tally {
    /// One invocation of the caller-supplied order predicate.
    #[inline]
    fn comparison(&mut self) {}

    /// `n` element placements (a swap reports 2).
    #[inline]
    fn moves(&mut self, n: u64) {
        let _ = n;
    }

    /// `n` element placements performed inside an interleave or uninterleave.
    /// These also count as ordinary moves.
    #[inline]
    fn shuffle_moves(&mut self, n: u64) {
        let _ = n;
    }

    /// One merge-level rotation of a segment of `segment_len` elements.
    /// The placements it performs are reported separately through
    /// [`moves`](Tally::moves).
    #[inline]
    fn rotation(&mut self, segment_len: u64) {
        let _ = segment_len;
    }

    /// One scan that accepted `r` elements of the shuffled region.
    #[inline]
    fn scan(&mut self, r: u64) {
        let _ = r;
    }

    /// Bottom of one inner merge loop iteration; `buffer_len` is the length
    /// of the single-origin buffer after the step's adjustments. Every
    /// iteration reports here, whether or not it scanned or rotated, which
    /// is the sample space the tail bounds live in.
    #[inline]
    fn loop_bottom(&mut self, buffer_len: u64) {
        let _ = buffer_len;
    }

    /// One trip around the outer (unequal-length) merge loop.
    #[inline]
    fn outer_iteration(&mut self) {}
}

impl Tally for () {}

/// Frequency table over small counts, capped at 64 with an overflow bucket.
///
/// Scan lengths and buffer lengths have geometric tails, so values past the
/// cap are astronomically rare; the cap keeps the table a fixed size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    counts: [u64; 65],
    overflow: u64,
}

impl Default for Histogram {
    fn default() -> Self {
        Histogram {
            counts: [0; 65],
            overflow: 0,
        }
    }
}

impl Histogram {
    /// Largest value stored in its own bucket.
    pub const CAP: u64 = 64;

    pub fn record(&mut self, value: u64) {
        if value <= Self::CAP {
            self.counts[value as usize] += 1;
        } else {
            self.overflow += 1;
        }
    }

    /// Samples recorded exactly at `value` (zero for values past the cap).
    pub fn count(&self, value: u64) -> u64 {
        if value <= Self::CAP {
            self.counts[value as usize]
        } else {
            0
        }
    }

    /// Samples recorded past the cap.
    pub fn overflow(&self) -> u64 {
        self.overflow
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.overflow
    }

    /// Non-empty buckets as `(value, count)` pairs, capped values only.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (v as u64, c))
    }

    pub fn absorb(&mut self, other: &Histogram) {
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
        self.overflow += other.overflow;
    }
}

/// Counter snapshot for one merge or sort invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CostCounters {
    /// Invocations of the order predicate.
    pub comparisons: u64,
    /// Element placements, everywhere (swap = 2).
    pub element_moves: u64,
    /// Element placements inside interleave/uninterleave; a subset of
    /// `element_moves`.
    pub shuffle_moves: u64,
    /// Merge-level rotation invocations.
    pub rotation_calls: u64,
    /// Summed segment lengths over those rotations.
    pub rotated_length_total: u64,
    /// Scan invocations.
    pub scan_calls: u64,
    /// Summed accepted counts over those scans.
    pub scan_r_total: u64,
    /// Inner merge loop iterations.
    pub loop_steps: u64,
    /// Outer merge loop trips.
    pub outer_iterations: u64,
    /// Frequencies of scan accepted counts.
    pub histogram_r: Histogram,
    /// Frequencies of the buffer length at the bottom of each loop iteration.
    pub histogram_pb: Histogram,
}

impl CostCounters {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sum another snapshot into this one. Aggregation across runs happens by
    /// absorbing snapshots after the fact; snapshots are never shared.
    pub fn absorb(&mut self, other: &CostCounters) {
        self.comparisons += other.comparisons;
        self.element_moves += other.element_moves;
        self.shuffle_moves += other.shuffle_moves;
        self.rotation_calls += other.rotation_calls;
        self.rotated_length_total += other.rotated_length_total;
        self.scan_calls += other.scan_calls;
        self.scan_r_total += other.scan_r_total;
        self.loop_steps += other.loop_steps;
        self.outer_iterations += other.outer_iterations;
        self.histogram_r.absorb(&other.histogram_r);
        self.histogram_pb.absorb(&other.histogram_pb);
    }
}

impl Tally for CostCounters {
    fn comparison(&mut self) {
        self.comparisons += 1;
    }

    fn moves(&mut self, n: u64) {
        self.element_moves += n;
    }

    fn shuffle_moves(&mut self, n: u64) {
        self.shuffle_moves += n;
        self.element_moves += n;
    }

    fn rotation(&mut self, segment_len: u64) {
        self.rotation_calls += 1;
        self.rotated_length_total += segment_len;
    }

    fn scan(&mut self, r: u64) {
        self.scan_calls += 1;
        self.scan_r_total += r;
        self.histogram_r.record(r);
    }

    fn loop_bottom(&mut self, buffer_len: u64) {
        self.loop_steps += 1;
        self.histogram_pb.record(buffer_len);
    }

    fn outer_iteration(&mut self) {
        self.outer_iterations += 1;
    }
}

/// Reattributes plain moves as shuffle moves for the duration of a shuffle.
///
/// The interleave routines rotate sub-blocks with the ordinary rotation
/// primitive; wrapping the tally in this adapter books those placements under
/// the shuffle instead of as merge-level rotations.
pub(crate) struct ShuffleScope<'a, C: Tally>(pub &'a mut C);

impl<C: Tally> Tally for ShuffleScope<'_, C> {
    fn moves(&mut self, n: u64) {
        self.0.shuffle_moves(n);
    }

    fn shuffle_moves(&mut self, n: u64) {
        self.0.shuffle_moves(n);
    }

    // Rotations inside a shuffle are not merge-level rotations: drop them.
    fn rotation(&mut self, _segment_len: u64) {}
}

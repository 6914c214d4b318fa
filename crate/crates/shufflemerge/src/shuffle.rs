//! In-place perfect shuffles and their inverses.
//!
//! [`interleave`] turns two adjacent sorted halves `x1..xk y1..ym` into the
//! alternation `x1 y1 x2 y2 ...` with the first element (and, for even
//! lengths, the last) left in place; [`uninterleave`] is its exact inverse.
//! Both run in linear time with a constant number of index words.
//!
//! The primitive underneath is [`in_shuffle`], the permutation that sends the
//! element at 1-based position `p` of an even-length span to position
//! `2 p mod (len + 1)`. It is realised by a cycle-leader walk: the span is
//! consumed left to right in maximal blocks whose length plus one is a power
//! of three, each block's cycles are followed starting from the leaders
//! 1, 3, 9, ..., and one rotation per block lines up the next block's
//! elements. Powers of three work because 2 generates, for every t, the
//! multiplicative group modulo `3^t`, so the orbits of doubling on
//! `1..3^t - 1` are exactly the classes of fixed 3-adic valuation, one leader
//! each.

use crate::count::{ShuffleScope, Tally};
use crate::rotate;

/// Largest block usable at the head of a remainder of length `rem`:
/// returns `(modulus, block_len)` with `modulus = 3^t`, `block_len = 3^t - 1`
/// and `block_len <= rem`.
fn block_for(rem: usize) -> (usize, usize) {
    debug_assert!(rem >= 2);
    let mut modulus = 3usize;
    while modulus <= (rem + 1) / 3 {
        modulus *= 3;
    }
    (modulus, modulus - 1)
}

fn mul_mod(a: usize, b: usize, modulus: usize) -> usize {
    // Double-width product so spans near the word-size limit cannot overflow.
    ((a as u128 * b as u128) % modulus as u128) as usize
}

/// Permute `block` (of length `modulus - 1`) by `p -> p * mult mod modulus`
/// on 1-based positions, walking each cycle from the leaders 1, 3, 9, ...
fn cycle_leader<T, C: Tally>(block: &mut [T], modulus: usize, mult: usize, tally: &mut C) {
    debug_assert_eq!(block.len() + 1, modulus);
    let mut leader = 1;
    while leader < modulus {
        let mut pos = leader;
        loop {
            pos = mul_mod(pos, mult, modulus);
            if pos == leader {
                break;
            }
            block.swap(leader - 1, pos - 1);
            tally.moves(2);
        }
        leader *= 3;
    }
}

/// In-place in-shuffle of an even-length span: `x1..xm y1..ym` becomes
/// `y1 x1 y2 x2 ... ym xm`, i.e. position `p` (1-based) moves to
/// `2 p mod (len + 1)`.
///
/// Panics if the span length is odd.
pub fn in_shuffle<T>(a: &mut [T]) {
    in_shuffle_counted(a, &mut ());
}

pub fn in_shuffle_counted<T, C: Tally>(a: &mut [T], tally: &mut C) {
    assert!(a.len() % 2 == 0, "in_shuffle requires an even-length span");
    let mut scope = ShuffleScope(tally);
    let n = a.len();
    let mut off = 0;
    while off < n {
        let rem = n - off;
        let (modulus, block) = block_for(rem);
        let half = block / 2;
        let mid = rem / 2;
        // Bring y1..y_half next to x1..x_half so the block is self-contained.
        rotate::rotate_right_counted(&mut a[off + half..off + mid + half], half, &mut scope);
        cycle_leader(&mut a[off..off + block], modulus, 2, &mut scope);
        off += block;
    }
}

/// Exact inverse of [`in_shuffle`]. Same block decomposition; each block's
/// cycles are walked with the inverse step `p -> p * (3^t + 1)/2`, then the
/// inter-block rotations are undone innermost first.
///
/// Panics if the span length is odd.
pub fn un_in_shuffle<T>(a: &mut [T]) {
    un_in_shuffle_counted(a, &mut ());
}

pub fn un_in_shuffle_counted<T, C: Tally>(a: &mut [T], tally: &mut C) {
    assert!(
        a.len() % 2 == 0,
        "un_in_shuffle requires an even-length span"
    );
    let mut scope = ShuffleScope(tally);
    let n = a.len();

    let mut off = 0;
    let mut blocks = 0usize;
    while off < n {
        let (modulus, block) = block_for(n - off);
        let inv_two = (modulus + 1) / 2;
        cycle_leader(&mut a[off..off + block], modulus, inv_two, &mut scope);
        off += block;
        blocks += 1;
    }

    // The forward pass rotates before each block; undo right to left. Offsets
    // are recomputed by short forward walks to keep auxiliary space constant.
    for target in (0..blocks).rev() {
        let mut off = 0;
        for _ in 0..target {
            let (_, block) = block_for(n - off);
            off += block;
        }
        let rem = n - off;
        let (_, block) = block_for(rem);
        let half = block / 2;
        let mid = rem / 2;
        rotate::rotate_left_counted(&mut a[off + half..off + mid + half], half, &mut scope);
    }
}

/// Interleave two adjacent halves in place. With `k = ceil(len / 2)`, the
/// input `x1..xk y1..y(len-k)` becomes `x1 y1 x2 y2 ...`; the first element
/// never moves, nor does the last when the length is even.
pub fn interleave<T>(a: &mut [T]) {
    interleave_counted(a, &mut ());
}

pub fn interleave_counted<T, C: Tally>(a: &mut [T], tally: &mut C) {
    let n = a.len();
    if n < 3 {
        return;
    }
    if n % 2 == 0 {
        in_shuffle_counted(&mut a[1..n - 1], tally);
    } else {
        in_shuffle_counted(&mut a[1..], tally);
    }
}

/// Exact inverse of [`interleave`]: the elements at odd 1-based positions,
/// in order, end up in the first `ceil(len / 2)` slots, the even-position
/// elements behind them.
pub fn uninterleave<T>(a: &mut [T]) {
    uninterleave_counted(a, &mut ());
}

pub fn uninterleave_counted<T, C: Tally>(a: &mut [T], tally: &mut C) {
    let n = a.len();
    if n < 3 {
        return;
    }
    if n % 2 == 0 {
        un_in_shuffle_counted(&mut a[1..n - 1], tally);
    } else {
        un_in_shuffle_counted(&mut a[1..], tally);
    }
}

/// Mirror-image uninterleave used by the backward merge: the elements at
/// even distance from the span's end (the last, the third from last, ...)
/// move, in order, to the trailing slots, the others to the front. For even
/// lengths this coincides with [`uninterleave`]; for odd lengths the fixed
/// element is the last one instead of the first.
pub(crate) fn uninterleave_back_counted<T, C: Tally>(a: &mut [T], tally: &mut C) {
    let n = a.len();
    if n < 3 {
        return;
    }
    if n % 2 == 0 {
        un_in_shuffle_counted(&mut a[1..n - 1], tally);
    } else {
        un_in_shuffle_counted(&mut a[..n - 1], tally);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::CostCounters;
    use proptest::prelude::*;

    // Buffered reference implementations. These stay independent of the
    // in-place code paths they are used to check.

    fn oracle_interleave<T: Clone>(a: &mut [T]) {
        let k = (a.len() + 1) / 2;
        let mut out = Vec::with_capacity(a.len());
        let (xs, ys) = a.split_at(k);
        let mut xs = xs.iter();
        let mut ys = ys.iter();
        loop {
            match (xs.next(), ys.next()) {
                (None, None) => break,
                (x, y) => {
                    out.extend(x.cloned());
                    out.extend(y.cloned());
                }
            }
        }
        a.clone_from_slice(&out);
    }

    fn oracle_uninterleave<T: Clone>(a: &mut [T]) {
        let mut out: Vec<T> = a.iter().step_by(2).cloned().collect();
        out.extend(a.iter().skip(1).step_by(2).cloned());
        a.clone_from_slice(&out);
    }

    fn oracle_uninterleave_back<T: Clone>(a: &mut [T]) {
        // Elements at even distance from the end go to the back, in order.
        let back_start = (a.len() + 1) % 2;
        let front_start = 1 - back_start;
        let mut out: Vec<T> = a.iter().skip(front_start).step_by(2).cloned().collect();
        out.extend(a.iter().skip(back_start).step_by(2).cloned());
        a.clone_from_slice(&out);
    }

    #[test]
    fn in_shuffle_four() {
        let mut v = vec!["x1", "x2", "y1", "y2"];
        in_shuffle(&mut v);
        assert_eq!(v, ["y1", "x1", "y2", "x2"]);
    }

    #[test]
    fn in_shuffle_empty() {
        let mut v: Vec<u8> = vec![];
        in_shuffle(&mut v);
        assert!(v.is_empty());
    }

    #[test]
    #[should_panic(expected = "even-length")]
    fn in_shuffle_rejects_odd_span() {
        let mut v = vec![1, 2, 3];
        in_shuffle(&mut v);
    }

    #[test]
    fn in_shuffle_three_cubed_block() {
        // Length 26 makes len + 1 = 27 = 3^3: a single block whose cycles
        // start at the leaders 1, 3 and 9.
        let orig: Vec<u32> = (0..26).collect();
        let mut v = orig.clone();
        in_shuffle(&mut v);
        for p in 1..=26usize {
            assert_eq!(v[(2 * p) % 27 - 1], orig[p - 1], "position {p}");
        }
        // And the interleave built on it agrees with the buffered oracle on
        // the enclosing span of length 28.
        let mut w: Vec<u32> = (0..28).collect();
        let mut expect = w.clone();
        interleave(&mut w);
        oracle_interleave(&mut expect);
        assert_eq!(w, expect);
    }

    #[test]
    fn in_shuffle_matches_position_map_all_even_lengths() {
        for m in 0..=256usize {
            let n = 2 * m;
            let orig: Vec<usize> = (0..n).collect();
            let mut v = orig.clone();
            in_shuffle(&mut v);
            for p in 1..=n {
                assert_eq!(v[(2 * p) % (n + 1) - 1], orig[p - 1], "n={n} p={p}");
            }
        }
    }

    #[test]
    fn interleave_even_and_odd_examples() {
        let mut v = vec![1, 2, 3, 4, 5, 6];
        interleave(&mut v);
        assert_eq!(v, [1, 4, 2, 5, 3, 6]);

        let mut v = vec![1, 2, 3, 4, 5];
        interleave(&mut v);
        assert_eq!(v, [1, 4, 2, 5, 3]);

        let mut v = vec![7];
        interleave(&mut v);
        assert_eq!(v, [7]);
    }

    #[test]
    fn uninterleave_examples() {
        let mut v = vec![1, 4, 2, 5, 3, 6];
        uninterleave(&mut v);
        assert_eq!(v, [1, 2, 3, 4, 5, 6]);

        let mut v = vec!["d1", "d2", "d3"];
        uninterleave(&mut v);
        assert_eq!(v, ["d1", "d3", "d2"]);
    }

    #[test]
    fn uninterleave_back_mirrors() {
        for n in 0..=64usize {
            let orig: Vec<usize> = (0..n).collect();
            let mut v = orig.clone();
            let mut expect = orig.clone();
            uninterleave_back_counted(&mut v, &mut ());
            oracle_uninterleave_back(&mut expect);
            assert_eq!(v, expect, "n={n}");
        }
    }

    #[test]
    fn inverse_law_large() {
        // Pseudo-random permutation of length 4096, fixed seed.
        let mut x = 0x9E37u64;
        let mut v: Vec<u64> = (0..4096)
            .map(|_| {
                x = x
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                x
            })
            .collect();
        let orig = v.clone();
        interleave(&mut v);
        uninterleave(&mut v);
        assert_eq!(v, orig);
    }

    #[test]
    fn shuffle_moves_are_linear() {
        for n in 0..=1024usize {
            let mut v: Vec<usize> = (0..n).collect();
            let mut c = CostCounters::new();
            interleave_counted(&mut v, &mut c);
            assert!(
                c.shuffle_moves <= 6 * n as u64,
                "n={n} moves={}",
                c.shuffle_moves
            );
            assert_eq!(c.element_moves, c.shuffle_moves);
            assert_eq!(
                c.rotation_calls, 0,
                "internal rotations must not book as merge rotations"
            );
        }
    }

    #[test]
    fn interleave_of_sorted_halves_is_two_ordered() {
        for n in [5usize, 12, 31, 64, 255] {
            let k = (n + 1) / 2;
            let mut v: Vec<usize> = (0..k).map(|i| 2 * i).collect();
            v.extend((0..n - k).map(|i| 2 * i + 1));
            interleave(&mut v);
            assert!(v.iter().step_by(2).is_sorted(), "odd positions n={n}");
            assert!(
                v.iter().skip(1).step_by(2).is_sorted(),
                "even positions n={n}"
            );
        }
    }

    proptest! {
        #[test]
        fn interleave_matches_oracle(mut v in proptest::collection::vec(any::<i32>(), 0..512)) {
            let mut expect = v.clone();
            interleave(&mut v);
            oracle_interleave(&mut expect);
            prop_assert_eq!(v, expect);
        }

        #[test]
        fn uninterleave_matches_oracle(mut v in proptest::collection::vec(any::<i32>(), 0..512)) {
            let mut expect = v.clone();
            uninterleave(&mut v);
            oracle_uninterleave(&mut expect);
            prop_assert_eq!(v, expect);
        }

        #[test]
        fn uninterleave_then_interleave_is_identity(mut v in proptest::collection::vec(any::<i32>(), 0..512)) {
            let orig = v.clone();
            uninterleave(&mut v);
            interleave(&mut v);
            prop_assert_eq!(v, orig);
        }
    }
}

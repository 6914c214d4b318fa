//! Constant-space circular shifts of a slice.
//!
//! Rotation is done by triple reversal: reverse the two parts, then the
//! whole. It is simple, cache friendly, and performs at most `2 * len`
//! element placements, which is the bound the cost model charges.

use crate::count::Tally;

fn reverse_counted<T, C: Tally>(a: &mut [T], tally: &mut C) {
    let mut lo = 0;
    let mut hi = a.len();
    while lo + 1 < hi {
        hi -= 1;
        a.swap(lo, hi);
        tally.moves(2);
        lo += 1;
    }
}

/// Circularly shift `a` right by `r`: the element at position `t` moves to
/// `(t + r) mod a.len()`. `r` is reduced modulo the length; empty slices and
/// zero shifts are no-ops.
pub fn rotate_right<T>(a: &mut [T], r: usize) {
    rotate_right_counted(a, r, &mut ());
}

pub fn rotate_right_counted<T, C: Tally>(a: &mut [T], r: usize, tally: &mut C) {
    let n = a.len();
    if n == 0 {
        return;
    }
    let r = r % n;
    if r == 0 {
        return;
    }
    reverse_counted(&mut a[..n - r], tally);
    reverse_counted(&mut a[n - r..], tally);
    reverse_counted(a, tally);
}

/// Mirror of [`rotate_right`]: position `t` moves to `(t - r) mod a.len()`.
pub fn rotate_left<T>(a: &mut [T], r: usize) {
    rotate_left_counted(a, r, &mut ());
}

pub fn rotate_left_counted<T, C: Tally>(a: &mut [T], r: usize, tally: &mut C) {
    let n = a.len();
    if n == 0 {
        return;
    }
    let r = r % n;
    if r == 0 {
        return;
    }
    reverse_counted(&mut a[..r], tally);
    reverse_counted(&mut a[r..], tally);
    reverse_counted(a, tally);
}

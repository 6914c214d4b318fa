//! Ground-truth references: a buffered two-finger merge (left run wins ties)
//! and instance-level wrappers. These never share code with the in-place
//! paths they judge.

use crate::instance::{Instance, TaggedKey};

/// Stable buffered merge of two sorted runs; on ties the left run's element
/// comes first.
pub fn oracle_merge<T, F>(left: &[T], right: &[T], mut less: F) -> Vec<T>
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
{
    let mut out = Vec::with_capacity(left.len() + right.len());
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        if less(&right[j], &left[i]) {
            out.push(right[j].clone());
            j += 1;
        } else {
            out.push(left[i].clone());
            i += 1;
        }
    }
    out.extend_from_slice(&left[i..]);
    out.extend_from_slice(&right[j..]);
    out
}

/// Oracle merge of an instance's keys ignoring payloads.
pub fn oracle_merge_keys(inst: &Instance) -> Vec<i64> {
    oracle_merge(&inst.left, &inst.right, |a, b| a < b)
}

/// Oracle merge of a tagged instance; payloads ride along untouched.
pub fn oracle_merge_tagged(inst: &Instance) -> Option<Vec<TaggedKey>> {
    let all = inst.tagged()?;
    let (left, right) = all.split_at(inst.left.len());
    Some(oracle_merge(left, right, |a, b| a.key < b.key))
}

//! Oracle verification with shadow invariant checking.
//!
//! The library tracks no per-element origins, so this module rebuilds them on
//! the side: an observer re-tags the window's halves whenever an inner merge
//! pass starts, then re-checks the loop invariants against those tags at
//! every loop boundary. Keys must be distinct small positive integers, which
//! is exactly what the exhaustive enumeration produces.

use std::fmt;

use shufflemerge::{
    check_invariants, merge_by, merge_with_scan_rule, Direction, MergeObserver, MergeState, Origin,
    ScanRule, Span,
};

use crate::instance::{Instance, TaggedKey};
use crate::oracle::{oracle_merge_keys, oracle_merge_tagged};

/// Re-derives origin tags per inner merge and accumulates invariant
/// violations. Tags are indexed by key, so keys must lie in `1..=capacity`.
pub struct InvariantTracker {
    tags: Vec<Origin>,
    pub violations: Vec<String>,
}

impl InvariantTracker {
    pub fn with_capacity(max_key: usize) -> Self {
        InvariantTracker {
            tags: vec![Origin::Left; max_key + 1],
            violations: Vec::new(),
        }
    }
}

impl MergeObserver<i64> for InvariantTracker {
    fn merge_started(&mut self, a: &[i64], _direction: Direction, window: Span) {
        // Halves are equal length and still contiguous here.
        let half = window.len / 2;
        for (offset, &key) in a[window.range()].iter().enumerate() {
            self.tags[key as usize] = if offset < half {
                Origin::Left
            } else {
                Origin::Right
            };
        }
    }

    fn at_loop_boundary(&mut self, a: &[i64], state: &MergeState) {
        let tags = &self.tags;
        let result = check_invariants(a, state, |k| tags[*k as usize], &mut |x, y| x < y);
        if let Err(violation) = result {
            self.violations.push(format!(
                "{violation} (direction {:?}, window {:?})",
                state.direction,
                state.window.range()
            ));
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub instances: u64,
    pub failures: u64,
    /// Serialized instance and reason for the first failure seen.
    pub first_failure: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} failures, {} instances",
            self.failures, self.instances
        )
    }
}

/// Merge every distinct-key instance of total length `1..=max_n` (every
/// subset of positions as the left run) and compare against the oracle, with
/// the loop invariants shadow-checked at every boundary.
///
/// Work grows as the sum of `2^n`, so `max_n` is capped at 20.
pub fn verify_exhaustive(max_n: u32) -> VerifyReport {
    verify_exhaustive_with(max_n, ScanRule::ClipOddTail)
}

/// [`verify_exhaustive`] under a chosen scan rule; `ScanRule::EvenOnly`
/// demonstrates the failure of the truncating-scan variant.
pub fn verify_exhaustive_with(max_n: u32, rule: ScanRule) -> VerifyReport {
    assert!(
        max_n <= 20,
        "exhaustive verification is exponential in max_n"
    );
    let mut report = VerifyReport::default();
    let mut tracker = InvariantTracker::with_capacity(max_n as usize);
    for n in 1..=max_n {
        for mask in 0u32..(1u32 << n) {
            let left: Vec<i64> = (1..=n as i64)
                .filter(|k| mask & (1 << (k - 1)) != 0)
                .collect();
            let right: Vec<i64> = (1..=n as i64)
                .filter(|k| mask & (1 << (k - 1)) == 0)
                .collect();
            let instance = Instance {
                left,
                right,
                payloads: None,
            };

            let mid = instance.left.len();
            let mut keys = instance.keys();
            tracker.violations.clear();
            merge_with_scan_rule(
                &mut keys,
                mid,
                &mut |a, b| a < b,
                &mut (),
                &mut tracker,
                rule,
            );

            let sorted = keys.iter().copied().eq(1..=n as i64);
            report.instances += 1;
            if !sorted || !tracker.violations.is_empty() {
                report.failures += 1;
                if report.first_failure.is_none() {
                    let mut reason = String::new();
                    if !sorted {
                        reason.push_str(&format!("output {keys:?} is not sorted; "));
                    }
                    reason.push_str(&tracker.violations.join("; "));
                    report.first_failure = Some(format!(
                        "instance:\n{}reason: {reason}",
                        instance.serialize()
                    ));
                }
            }
        }
    }
    report
}

/// Merge one instance and compare it, payloads included when present, with
/// the buffered oracle.
pub fn verify_instance(inst: &Instance) -> Result<(), String> {
    match inst.tagged() {
        Some(tagged) => {
            let expect = oracle_merge_tagged(inst).expect("tagged instance");
            let mut work: Vec<TaggedKey> = tagged;
            merge_by(&mut work, inst.left.len(), |a, b| a.key < b.key);
            if work != expect {
                return Err(format!(
                    "tagged merge mismatch: got {:?}, expected {:?}",
                    summarize(&work),
                    summarize(&expect)
                ));
            }
            Ok(())
        }
        None => {
            let expect = oracle_merge_keys(inst);
            let mut work = inst.keys();
            merge_by(&mut work, inst.left.len(), |a, b| a < b);
            if work != expect {
                return Err(format!("merge mismatch: got {work:?}, expected {expect:?}"));
            }
            Ok(())
        }
    }
}

fn summarize(items: &[TaggedKey]) -> Vec<(i64, char, u32)> {
    items
        .iter()
        .map(|t| {
            let o = match t.payload.origin {
                Origin::Left => 'L',
                Origin::Right => 'R',
            };
            (t.key, o, t.payload.index)
        })
        .collect()
}

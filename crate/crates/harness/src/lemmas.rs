//! Monte Carlo checks of the geometric-tail behaviour behind the linear
//! average case.
//!
//! Over uniformly random equal-length instances, the probability that a loop
//! iteration scans exactly `r` accepted elements is bounded by `1/2^r`, and
//! the probability that the buffer holds `p` elements at the bottom of an
//! iteration is bounded by `1/2^(p-1)`. Those tails make the expected scan
//! work per iteration at most 2 and the expected rotation work per iteration
//! at most 3 elements. The sample space throughout is loop iterations: an
//! iteration that extracts a buffer element without scanning counts as a
//! zero-length scan, which is exactly how the expectations are derived.
//! This module aggregates the engine's histograms over many seeded merges
//! and compares every bucket against its bound plus three binomial standard
//! errors, and the means against the expectations plus ten percent slack.

use anyhow::{ensure, Result};
use shufflemerge::{merge_with, CostCounters};

use crate::bench::sub_seed;
use crate::instance::{gen_random, Kind};

/// Mean scanned elements per loop iteration: expectation 2 plus slack.
pub const MEAN_SCAN_R_MAX: f64 = 2.2;
/// Mean rotated elements per loop iteration: expectation 3 plus slack.
pub const MEAN_ROTATED_LEN_MAX: f64 = 3.3;

/// One histogram bucket that exceeded its bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BucketExcess {
    pub value: u64,
    pub frequency: f64,
    pub limit: f64,
}

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub merges: u64,
    pub iterations: u64,
    pub scans: u64,
    pub rotations: u64,
    /// Scanned elements per loop iteration.
    pub mean_scan_r: f64,
    /// Rotated segment elements per loop iteration.
    pub mean_rotated_len: f64,
    pub scan_bucket_failures: Vec<BucketExcess>,
    pub buffer_bucket_failures: Vec<BucketExcess>,
    pub counters: CostCounters,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.scan_bucket_failures.is_empty()
            && self.buffer_bucket_failures.is_empty()
            && self.mean_scan_r <= MEAN_SCAN_R_MAX
            && self.mean_rotated_len <= MEAN_ROTATED_LEN_MAX
    }

    /// Multi-line human-readable summary, one verdict line per check.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "merges {}  loop iterations {}  scans {}  rotations {}\n",
            self.merges, self.iterations, self.scans, self.rotations
        ));
        out.push_str(&format!(
            "scan tail  Pr(r) <= 1/2^r + 3se      : {}\n",
            if self.scan_bucket_failures.is_empty() {
                "PASS".to_string()
            } else {
                format!("FAIL {:?}", self.scan_bucket_failures)
            }
        ));
        out.push_str(&format!(
            "buffer tail Pr(p) <= 1/2^(p-1) + 3se : {}\n",
            if self.buffer_bucket_failures.is_empty() {
                "PASS".to_string()
            } else {
                format!("FAIL {:?}", self.buffer_bucket_failures)
            }
        ));
        out.push_str(&format!(
            "mean scan r {:.4} (limit {MEAN_SCAN_R_MAX})       : {}\n",
            self.mean_scan_r,
            if self.mean_scan_r <= MEAN_SCAN_R_MAX {
                "PASS"
            } else {
                "FAIL"
            }
        ));
        out.push_str(&format!(
            "mean rotated len {:.4} (limit {MEAN_ROTATED_LEN_MAX}) : {}\n",
            self.mean_rotated_len,
            if self.mean_rotated_len <= MEAN_ROTATED_LEN_MAX {
                "PASS"
            } else {
                "FAIL"
            }
        ));
        out
    }
}

fn bucket_failures(
    samples: u64,
    buckets: impl Iterator<Item = (u64, u64)>,
    overflow: u64,
    bound: impl Fn(u64) -> f64,
    overflow_bound: f64,
) -> Vec<BucketExcess> {
    let mut failures = Vec::new();
    let total = samples as f64;
    let mut check = |value: u64, count: u64, limit_base: f64| {
        if count == 0 {
            return;
        }
        let frequency = count as f64 / total;
        let se = (frequency * (1.0 - frequency) / total).sqrt();
        let limit = limit_base + 3.0 * se;
        if frequency > limit {
            failures.push(BucketExcess {
                value,
                frequency,
                limit,
            });
        }
    };
    for (value, count) in buckets {
        check(value, count, bound(value));
    }
    check(u64::MAX, overflow, overflow_bound);
    failures
}

/// Aggregate histograms over `reps` uniformly random equal-length instances
/// of total length `n` and compare them against the geometric bounds.
pub fn lemma_stats(n: usize, reps: u32, seed: u64) -> Result<LemmaReport> {
    ensure!(n >= 64, "n must be at least 64, got {n}");
    ensure!(reps >= 1000, "reps must be at least 1000, got {reps}");
    ensure!(n % 2 == 0, "equal-length instances need even n, got {n}");

    let mut totals = CostCounters::new();
    for rep in 0..reps {
        let inst = gen_random(n, n / 2, sub_seed(seed, Kind::Random, n, rep))?;
        let mut keys = inst.keys();
        let mid = inst.left.len();
        let mut counters = CostCounters::new();
        merge_with(&mut keys, mid, &mut |a, b| a < b, &mut counters, &mut ());
        totals.absorb(&counters);
    }

    let scan_bucket_failures = bucket_failures(
        totals.loop_steps,
        totals.histogram_r.nonzero(),
        totals.histogram_r.overflow(),
        |r| 0.5f64.powi(r as i32),
        0.5f64.powi(64),
    );
    let buffer_bucket_failures = bucket_failures(
        totals.loop_steps,
        totals.histogram_pb.nonzero(),
        totals.histogram_pb.overflow(),
        |p| 0.5f64.powi(p.saturating_sub(1) as i32),
        0.5f64.powi(63),
    );

    Ok(LemmaReport {
        merges: reps as u64,
        iterations: totals.loop_steps,
        scans: totals.scan_calls,
        rotations: totals.rotation_calls,
        mean_scan_r: totals.scan_r_total as f64 / totals.loop_steps as f64,
        mean_rotated_len: totals.rotated_length_total as f64 / totals.loop_steps as f64,
        scan_bucket_failures,
        buffer_bucket_failures,
        counters: totals,
    })
}

//! Deterministic counter benchmarks over generated instances.
//!
//! One record per (kind, n, rep). Acceptance rests on the counters; wall
//! time is recorded for orientation but never gates anything.

use std::time::Instant;

use anyhow::{bail, Result};
use shufflemerge::{merge_with, CostCounters};

use crate::instance::{gen_adversarial, gen_duplicates, gen_random, Kind};
use crate::rng::SplitMix64;

/// CSV schema, fixed: all fields numeric or bare words, comma separated,
/// `\n` line endings, no quoting.
pub const CSV_HEADER: &str =
    "kind,n,seed,comparisons,moves,rotations,scan_steps,outer_iters,wall_ns";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub kind: Kind,
    /// Total instance length (both lists).
    pub n: usize,
    /// The derived per-instance seed actually fed to the generator.
    pub seed: u64,
    pub comparisons: u64,
    pub moves: u64,
    pub rotations: u64,
    pub scan_steps: u64,
    pub outer_iters: u64,
    pub wall_ns: u64,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.kind.as_str(),
            self.n,
            self.seed,
            self.comparisons,
            self.moves,
            self.rotations,
            self.scan_steps,
            self.outer_iters,
            self.wall_ns
        )
    }

    fn from_counters(kind: Kind, n: usize, seed: u64, c: &CostCounters, wall_ns: u64) -> Self {
        BenchRecord {
            kind,
            n,
            seed,
            comparisons: c.comparisons,
            moves: c.element_moves,
            rotations: c.rotation_calls,
            scan_steps: c.scan_r_total,
            outer_iters: c.outer_iterations,
            wall_ns,
        }
    }
}

/// Per-instance seed, a fixed function of the run seed and the coordinates.
pub fn sub_seed(seed: u64, kind: Kind, n: usize, rep: u32) -> u64 {
    let kind_id = match kind {
        Kind::Random => 1u64,
        Kind::Adversarial => 2,
        Kind::Dupes => 3,
    };
    let mixed = seed
        ^ kind_id.wrapping_mul(0xA076_1D64_78BD_642F)
        ^ (n as u64).wrapping_mul(0xE703_7ED1_A0B4_28DB)
        ^ (rep as u64).wrapping_mul(0x8EBC_6AF0_9C88_C6E3);
    SplitMix64::new(mixed).next()
}

/// Doubling sizes from `min_n` up to and including everything `<= max_n`.
pub fn doubling_sizes(min_n: usize, max_n: usize) -> Result<Vec<usize>> {
    if min_n == 0 || min_n > max_n {
        bail!("need 0 < min-n <= max-n (got {min_n}..{max_n})");
    }
    let mut sizes = Vec::new();
    let mut n = min_n;
    loop {
        sizes.push(n);
        match n.checked_mul(2) {
            Some(next) if next <= max_n => n = next,
            _ => break,
        }
    }
    Ok(sizes)
}

/// Generate the instance for (kind, n, seed) and merge it with counters.
pub fn run_one(kind: Kind, n: usize, seed: u64) -> Result<BenchRecord> {
    match kind {
        Kind::Random => {
            let inst = gen_random(n, n / 2, seed)?;
            let mut keys = inst.keys();
            let mid = inst.left.len();
            let mut counters = CostCounters::new();
            let start = Instant::now();
            merge_with(&mut keys, mid, &mut |a, b| a < b, &mut counters, &mut ());
            let wall_ns = start.elapsed().as_nanos() as u64;
            Ok(BenchRecord::from_counters(
                kind, n, seed, &counters, wall_ns,
            ))
        }
        Kind::Adversarial => {
            if n < 4 || n % 4 != 0 {
                bail!("adversarial instances need n divisible by 4, got {n}");
            }
            let inst = gen_adversarial(n / 4);
            let mut keys = inst.keys();
            let mid = inst.left.len();
            let mut counters = CostCounters::new();
            let start = Instant::now();
            merge_with(&mut keys, mid, &mut |a, b| a < b, &mut counters, &mut ());
            let wall_ns = start.elapsed().as_nanos() as u64;
            Ok(BenchRecord::from_counters(
                kind, n, seed, &counters, wall_ns,
            ))
        }
        Kind::Dupes => {
            let inst = gen_duplicates(n, 3, seed);
            let mut items = inst.tagged().expect("dupes instances carry payloads");
            let mid = inst.left.len();
            let mut counters = CostCounters::new();
            let start = Instant::now();
            merge_with(
                &mut items,
                mid,
                &mut |a, b| a.key < b.key,
                &mut counters,
                &mut (),
            );
            let wall_ns = start.elapsed().as_nanos() as u64;
            Ok(BenchRecord::from_counters(
                kind, n, seed, &counters, wall_ns,
            ))
        }
    }
}

/// One record per (kind, size, rep), in that nesting order regardless of how
/// the work is scheduled.
pub fn bench(kinds: &[Kind], sizes: &[usize], reps: u32, seed: u64) -> Result<Vec<BenchRecord>> {
    if reps == 0 {
        bail!("reps must be at least 1");
    }
    let mut records = Vec::with_capacity(kinds.len() * sizes.len() * reps as usize);
    for &kind in kinds {
        for &n in sizes {
            for rep in 0..reps {
                records.push(run_one(kind, n, sub_seed(seed, kind, n, rep))?);
            }
        }
    }
    Ok(records)
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for record in records {
        out.push_str(&record.csv_row());
        out.push('\n');
    }
    out
}

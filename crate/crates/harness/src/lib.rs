//! Verification and benchmark harness for the shufflemerge library:
//! deterministic instance generators, buffered oracles, exhaustive and
//! seeded verification with invariant shadow checking, counter benchmarks,
//! log-log exponent fits and Monte Carlo tail checks.

pub mod bench;
pub mod cli;
pub mod fit;
pub mod instance;
pub mod lemmas;
pub mod oracle;
pub mod rng;
pub mod verify;

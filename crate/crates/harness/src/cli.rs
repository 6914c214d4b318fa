//! Command line interface: instance generation, oracle verification,
//! counter benchmarks and lemma checks.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};

use crate::bench::{bench, doubling_sizes, to_csv};
use crate::instance::{gen_adversarial, gen_duplicates, gen_random, Instance, Kind};
use crate::lemmas::lemma_stats;
use crate::verify::{verify_exhaustive, verify_instance};

#[derive(Parser)]
#[command(
    name = "shufflemerge",
    version,
    about = "Shuffle-merge verification and benchmark harness"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Check merges against the buffered oracle.
    Verify(VerifyArgs),
    /// Run counter benchmarks and write a CSV.
    Bench(BenchArgs),
    /// Monte Carlo checks of the scan and rotation tail bounds.
    Lemmas(LemmasArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Instance family: random, adversarial or dupes.
    #[arg(long)]
    kind: Kind,
    /// Total length (both lists together). Required for random and dupes.
    #[arg(long)]
    n: Option<usize>,
    /// Left-list size for random instances (default n/2).
    #[arg(long)]
    k: Option<usize>,
    /// Adversarial scale; the instance has total length 4m (default n/4).
    #[arg(long)]
    m: Option<usize>,
    /// Alphabet size for dupes instances.
    #[arg(long, default_value_t = 3)]
    alphabet: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Exhaustively verify all distinct-key instances up to this total
    /// length, with invariant shadow checking (at most 20).
    #[arg(long = "exhaustive-max", conflicts_with = "file")]
    exhaustive_max: Option<u32>,
    /// Verify one instance file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated instance kinds, e.g. random,adversarial.
    #[arg(long)]
    kinds: String,
    /// Smallest total length.
    #[arg(long = "min-n")]
    min_n: usize,
    /// Largest total length; sizes double from min-n up to here.
    #[arg(long = "max-n")]
    max_n: usize,
    #[arg(long, default_value_t = 1)]
    reps: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV file.
    #[arg(long)]
    csv: PathBuf,
}

#[derive(Args)]
struct LemmasArgs {
    /// Instance total length (even, at least 64).
    #[arg(long)]
    n: usize,
    /// Number of seeded instances (at least 1000).
    #[arg(long)]
    reps: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl clap::ValueEnum for Kind {
    fn value_variants<'a>() -> &'a [Self] {
        &[Kind::Random, Kind::Adversarial, Kind::Dupes]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.as_str()))
    }
}

fn usage_error(message: &str) -> ! {
    Cli::command()
        .error(ErrorKind::InvalidValue, message)
        .exit()
}

/// Parse argv and dispatch. Returns the process exit code: 0 on success, 1
/// on verification failure (with a one-line diagnostic on stderr); usage
/// errors exit 2 via clap.
pub fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen(args) => {
            let instance = generate(&args)?;
            fs::write(&args.out, instance.serialize())
                .with_context(|| format!("writing {}", args.out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => run_verify(&args),
        Command::Bench(args) => {
            let kinds = parse_kinds(&args.kinds);
            let sizes = doubling_sizes(args.min_n, args.max_n)?;
            let records = bench(&kinds, &sizes, args.reps, args.seed)?;
            fs::write(&args.csv, to_csv(&records))
                .with_context(|| format!("writing {}", args.csv.display()))?;
            println!("wrote {} records to {}", records.len(), args.csv.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Lemmas(args) => {
            let report = lemma_stats(args.n, args.reps, args.seed)?;
            print!("{}", report.render());
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("lemma check failed: an empirical tail exceeded its bound");
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn generate(args: &GenArgs) -> Result<Instance> {
    match args.kind {
        Kind::Random => {
            let n = args
                .n
                .unwrap_or_else(|| usage_error("--kind random requires --n"));
            gen_random(n, args.k.unwrap_or(n / 2), args.seed)
        }
        Kind::Adversarial => {
            let m = match (args.m, args.n) {
                (Some(m), _) => m,
                (None, Some(n)) if n >= 4 && n % 4 == 0 => n / 4,
                (None, Some(_)) => usage_error("adversarial --n must be a positive multiple of 4"),
                (None, None) => usage_error("--kind adversarial requires --m (or --n)"),
            };
            if m == 0 {
                usage_error("--m must be at least 1");
            }
            Ok(gen_adversarial(m))
        }
        Kind::Dupes => {
            let n = args
                .n
                .unwrap_or_else(|| usage_error("--kind dupes requires --n"));
            if args.alphabet == 0 {
                usage_error("--alphabet must be at least 1");
            }
            Ok(gen_duplicates(n, args.alphabet, args.seed))
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<ExitCode> {
    match (&args.exhaustive_max, &args.file) {
        (Some(max_n), None) => {
            if *max_n > 20 {
                usage_error("--exhaustive-max is capped at 20");
            }
            let report = verify_exhaustive(*max_n);
            println!("{report}");
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                if let Some(failure) = &report.first_failure {
                    eprintln!("verification failed; first counterexample: {failure}");
                }
                Ok(ExitCode::FAILURE)
            }
        }
        (None, Some(path)) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let instance =
                Instance::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
            match verify_instance(&instance) {
                Ok(()) => {
                    println!("0 failures, 1 instances");
                    Ok(ExitCode::SUCCESS)
                }
                Err(reason) => {
                    eprintln!("verification failed for {}: {reason}", path.display());
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        _ => usage_error("verify needs exactly one of --exhaustive-max or --file"),
    }
}

fn parse_kinds(list: &str) -> Vec<Kind> {
    let kinds: Vec<Kind> = list
        .split(',')
        .filter(|token| !token.is_empty())
        .map(|token| {
            token
                .parse()
                .unwrap_or_else(|e| usage_error(&format!("{e}")))
        })
        .collect();
    if kinds.is_empty() {
        usage_error("--kinds must name at least one instance kind");
    }
    kinds
}

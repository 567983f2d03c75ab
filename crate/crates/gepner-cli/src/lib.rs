//! Command-line surface over the gepner engines. Every command has a
//! plain-text mode and a structured JSON envelope mode; `moments` also
//! speaks CSV. All numbers cross this boundary as exact decimal strings.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use gepner::envelope::Envelope;

/// Environment variable naming the checkpoint directory for long truncated
/// sweeps; unset means checkpointing is disabled.
pub const CHECKPOINT_ENV: &str = "GEPNER_CHECKPOINT_DIR";

#[derive(Parser)]
#[command(
    name = "gepner",
    version,
    about = "Exact gep/inv/maj statistics, Gepner polynomials, moments and limits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (csv applies to `moments` only).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for sharded enumeration and layer sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Override the built-in size caps (perms n <= 10, brute words total
    /// <= 15, truncated engine n <= 30 and r <= 14).
    #[arg(long, global = true)]
    unsafe_limits: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Perms,
    Words,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatArg {
    Gep,
    Inv,
    Maj,
    Pairs,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Brute,
    Recurrence,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Mean,
    Central,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Macmahon,
    Recurrence,
    Equidistribution,
    Reversal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CompareArg {
    Logistic,
    Normal,
}

impl std::fmt::Display for CompareArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CompareArg::Logistic => "logistic",
            CompareArg::Normal => "normal",
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate gep/inv/maj (and pair counts) on one word.
    Stat(StatCmd),
    /// Distribution polynomial of a statistic over S_n or W(a1,a2,a3).
    Poly(PolyCmd),
    /// Exact moment tables per size.
    Moments(MomentsCmd),
    /// Fit a moment polynomial in n, with guard points.
    Fit(FitCmd),
    /// Exact limiting standardized moments and distribution verdicts.
    Limits(LimitsCmd),
    /// Oracle-equivalence suites; exit 0 iff all checks pass.
    Verify(VerifyCmd),
}

#[derive(Args)]
struct StatCmd {
    /// Word as digits ("132") or comma-separated letters ("1,3,2").
    #[arg(long)]
    word: String,
    #[arg(long, value_enum, default_value_t = StatArg::All)]
    stat: StatArg,
}

#[derive(Args)]
struct PolyCmd {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Size: permutation length, or n for W(n,n,n).
    #[arg(long)]
    n: Option<u64>,
    /// Explicit multiplicities a1,a2,a3 (words only).
    #[arg(long)]
    counts: Option<String>,
    #[arg(long, value_enum, default_value_t = StatArg::Gep)]
    stat: StatArg,
    #[arg(long, value_enum, default_value_t = EngineArg::Brute)]
    engine: EngineArg,
}

#[derive(Args)]
struct MomentsCmd {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Single size.
    #[arg(long)]
    n: Option<u64>,
    /// All sizes 1..=n_max.
    #[arg(long)]
    n_max: Option<u64>,
    /// Highest moment order to report.
    #[arg(long, default_value_t = 4)]
    max_moment: u64,
    /// Default: recurrence for words, brute force for perms.
    #[arg(long, value_enum)]
    engine: Option<EngineArg>,
}

#[derive(Args)]
struct FitCmd {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Moment order r (central moment m_r).
    #[arg(long)]
    moment: u64,
    /// Fit the mean instead of a central moment.
    #[arg(long, value_enum, default_value_t = KindArg::Central)]
    kind: KindArg,
    /// Inclusive size range "A..B"; the last points are the guards.
    #[arg(long)]
    n_range: String,
    /// Data points held back to falsify the degree assumption.
    #[arg(long, default_value_t = 2)]
    guards: usize,
}

#[derive(Args)]
struct LimitsCmd {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Highest (even) moment order.
    #[arg(long)]
    max_moment: u64,
    /// Comma-separated candidates to compare against.
    #[arg(long, value_delimiter = ',', default_values_t = [CompareArg::Logistic, CompareArg::Normal])]
    compare: Vec<CompareArg>,
}

#[derive(Args)]
struct VerifyCmd {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    /// Size bound: per-part cap (macmahon), total (recurrence,
    /// equidistribution), or word length (reversal).
    #[arg(long)]
    max: u64,
}

/// A command's output: plain-text lines plus the structured payload.
struct Output {
    text: String,
    inputs: Value,
    result: Value,
    /// CSV rendering, for the commands that have one.
    csv: Option<String>,
    /// `verify` reports failure through the exit code, not an error.
    failed: bool,
}

impl Output {
    fn new(text: String, inputs: Value, result: Value) -> Self {
        Output { text, inputs, result, csv: None, failed: false }
    }
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // ignore the error if a global pool already exists (tests)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let started = Instant::now();
    let outcome = dispatch(&cli);
    match outcome {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => {
                    let env = Envelope::new(
                        command_name(&cli.command),
                        out.inputs,
                        out.result,
                        started.elapsed().as_millis() as u64,
                    );
                    println!("{}", env.to_canonical_json());
                }
                Format::Csv => match out.csv {
                    Some(csv) => print!("{csv}"),
                    None => {
                        eprintln!("error: csv output is only available for `moments`");
                        return ExitCode::from(2);
                    }
                },
            }
            if out.failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Stat(_) => "stat",
        Command::Poly(_) => "poly",
        Command::Moments(_) => "moments",
        Command::Fit(_) => "fit",
        Command::Limits(_) => "limits",
        Command::Verify(_) => "verify",
    }
}

fn checkpoint_dir() -> Option<PathBuf> {
    std::env::var_os(CHECKPOINT_ENV).map(PathBuf::from)
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let unsafe_limits = cli.unsafe_limits;
    match &cli.command {
        Command::Stat(cmd) => commands::stat(cmd),
        Command::Poly(cmd) => commands::poly(cmd, unsafe_limits),
        Command::Moments(cmd) => commands::moments(cmd, unsafe_limits),
        Command::Fit(cmd) => commands::fit(cmd, unsafe_limits),
        Command::Limits(cmd) => commands::limits(cmd, unsafe_limits),
        Command::Verify(cmd) => commands::verify(cmd, unsafe_limits),
    }
}

/// Caps for the truncated engine (overridable with --unsafe-limits).
const TRUNC_N_CAP: u64 = 30;
const TRUNC_R_CAP: u64 = 14;

fn check_trunc_caps(n_max: u64, r: u64, unsafe_limits: bool) -> Result<()> {
    if !unsafe_limits {
        if n_max > TRUNC_N_CAP {
            bail!("n = {n_max} exceeds the truncated-engine cap {TRUNC_N_CAP}; pass --unsafe-limits to override");
        }
        if r > TRUNC_R_CAP {
            bail!("r = {r} exceeds the truncated-engine cap {TRUNC_R_CAP}; pass --unsafe-limits to override");
        }
    }
    Ok(())
}

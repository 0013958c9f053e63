//! `tailsmith` command line.
//!
//! Exit codes: 0 success, 1 `verify` found a violated bound, 2 unparseable
//! input, 3 a bound's hypothesis or domain check failed.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tailsmith::{Error, SmoothingMode, TChoice, TailKind};

pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tailsmith",
    version,
    about = "Classical and smoothed tail bounds, checked against exact and Monte Carlo tails"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one bound.
    Bound(BoundArgs),
    /// Classical vs smoothed bound, exact tails and a Monte Carlo estimate for one threshold.
    Compare(CompareArgs),
    /// Classical and smoothed bounds over a grid of thresholds.
    Sweep(SweepArgs),
    /// Run the built-in verification corpus; exits 1 on any violated bound.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
pub struct QueryArgs {
    /// Distribution literal, e.g. `exp:1`, `normal:0,1`, `discrete:(0,0.5);(2,0.5)`.
    #[arg(long)]
    pub dist: String,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Chernoff exponent: a real number or `auto` for the optimum.
    #[arg(long, default_value = "auto", value_parser = parse_t, allow_negative_numbers = true)]
    pub t: TChoice,
    /// Tail to bound; defaults to `upper` for Markov/Chernoff and `two-sided` for Chebyshev/Gauss.
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    #[arg(long, value_enum, default_value_t = OutputArg::Table)]
    pub output: OutputArg,
}

#[derive(Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, value_enum, default_value_t = SmoothingArg::Classical)]
    pub smoothing: SmoothingArg,
    /// Number of i.i.d. copies; bounds the sample mean (Chernoff only).
    #[arg(long, default_value_t = 1)]
    pub n: u64,
}

#[derive(Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, value_enum, default_value_t = SmoothingArg::AutoDropU)]
    pub smoothing: SmoothingArg,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, env = "TAILSMITH_SEED", default_value_t = 42)]
    pub seed: u64,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub a_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub a_max: f64,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = SmoothingArg::AutoDropU)]
    pub smoothing: SmoothingArg,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, env = "TAILSMITH_SEED", default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OutputArg::Table)]
    pub output: OutputArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Markov,
    Chebyshev,
    Chernoff,
    Gauss,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Upper,
    Lower,
    TwoSided,
}

impl From<SideArg> for TailKind {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Upper => TailKind::Upper,
            SideArg::Lower => TailKind::Lower,
            SideArg::TwoSided => TailKind::TwoSided,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SmoothingArg {
    Classical,
    Smoothed,
    AutoDropU,
}

impl From<SmoothingArg> for SmoothingMode {
    fn from(s: SmoothingArg) -> Self {
        match s {
            SmoothingArg::Classical => SmoothingMode::Classical,
            SmoothingArg::Smoothed => SmoothingMode::Smoothed,
            SmoothingArg::AutoDropU => SmoothingMode::AutoDropU,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    Table,
    Csv,
    Json,
}

fn parse_t(s: &str) -> Result<TChoice, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(TChoice::Auto);
    }
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() => Ok(TChoice::Fixed(t)),
        _ => Err(format!("expected a finite real or `auto`, got `{s}`")),
    }
}

/// What a command produced: text for stdout and whether a bound was violated.
pub struct Outcome {
    pub text: String,
    pub violated: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        _ => EXIT_PRECONDITION,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bound(args) => commands::bound(&args),
        Command::Compare(args) => commands::compare(&args),
        Command::Sweep(args) => commands::sweep(&args),
        Command::Verify(args) => commands::verify(&args),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.violated {
                ExitCode::from(EXIT_VIOLATION)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("tailsmith: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

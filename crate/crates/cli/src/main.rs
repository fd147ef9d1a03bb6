//! Command-line surface: splitting, randomized verification, series
//! truncation curves, and spin-resonance sweeps, with CSV or JSON output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/config error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

#[derive(Parser)]
#[command(
    name = "expsplit",
    version,
    about = "Exponential factorization for 3-cyclic Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output path (stdout when omitted). Relative paths resolve against
    /// EXPSPLIT_OUTPUT_DIR when that variable is set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Factor exp(aX + bY [+ cZ]) into single-generator exponentials and
    /// check the product against the direct exponential.
    Split(SplitArgs),
    /// Randomized residual sweep over all twelve product orderings.
    Verify(VerifyArgs),
    /// Truncation-error curve of the series engine against exp(X) exp(Y).
    Bch(BchArgs),
    /// Transition-probability sweep of the rotating-frame propagator.
    Rabi(RabiArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InnerAxis {
    X,
    Y,
}

#[derive(Args)]
struct SplitArgs {
    /// Use the real so(3) rotation generators (kappa = 1).
    #[arg(long, conflicts_with = "spin")]
    so3: bool,

    /// Use spin-J generators with two_j = 2J (kappa = i).
    #[arg(long, value_name = "TWO_J")]
    spin: Option<u32>,

    /// Coefficient of X.
    #[arg(short = 'a', allow_hyphen_values = true)]
    a: f64,

    /// Coefficient of Y.
    #[arg(short = 'b', allow_hyphen_values = true)]
    b: f64,

    /// Coefficient of Z; enables the five-factor split.
    #[arg(short = 'c', allow_hyphen_values = true)]
    c: Option<f64>,

    /// Ordering for three-coefficient splits (t2r1..t2r4, t3r1..t3r8).
    #[arg(long, default_value = "t2r1")]
    variant: String,

    /// Which axis of the (X, Y) pair carries the center factor in
    /// two-coefficient splits.
    #[arg(long, value_enum, default_value_t = InnerAxis::X)]
    inner: InnerAxis,

    /// Structure-constant override (e.g. "1", "i", "-i", "2.5", "1+0.5i");
    /// the generators are rescaled to realize it.
    #[arg(long)]
    kappa: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Random coefficient draws per variant per representation.
    #[arg(long, default_value_t = 100)]
    draws: u32,

    /// RNG seed; identical seeds reproduce identical reports byte for byte.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Coefficients are drawn uniformly from [-range, range]^3.
    #[arg(long, default_value_t = 2.5)]
    range: f64,

    /// Debug: negate the center factor of this variant to force a failure.
    #[arg(long, value_name = "VARIANT")]
    corrupt: Option<String>,
}

#[derive(Args)]
struct BchArgs {
    /// Highest series degree (at most 10).
    #[arg(long, default_value_t = 8)]
    max_degree: u32,

    /// Spin representation feeding the test matrices.
    #[arg(long, default_value_t = 1)]
    two_j: u32,

    /// Scale of the anti-Hermitian test matrices.
    #[arg(long, default_value_t = 0.1)]
    scale: f64,

    /// Use commuting (diagonal) test matrices instead.
    #[arg(long)]
    commuting: bool,
}

#[derive(Args)]
struct RabiArgs {
    /// Rotating-frame angular frequency.
    #[arg(long, allow_hyphen_values = true)]
    omega: f64,

    /// Resonance angular frequency (nonzero).
    #[arg(long, allow_hyphen_values = true)]
    big_omega: f64,

    /// Dimensionless drive strength.
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,

    /// Representation size two_j = 2J.
    #[arg(long, default_value_t = 1)]
    two_j: u32,

    /// First grid time.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t_start: f64,

    /// Last grid time.
    #[arg(long, allow_hyphen_values = true)]
    t_stop: f64,

    /// Number of grid points (inclusive endpoints).
    #[arg(long, default_value_t = 100)]
    t_count: u32,

    /// Initial Jz eigenstate as two_m = 2m; defaults to m = -J.
    #[arg(long, value_name = "TWO_M", allow_hyphen_values = true)]
    from: Option<i32>,

    /// Final Jz eigenstate as two_m = 2m; defaults to m = +J.
    #[arg(long, value_name = "TWO_M", allow_hyphen_values = true)]
    to: Option<i32>,
}

/// Successful runs either pass or report a verification failure; config and
/// usage problems surface as errors (exit 2).
enum Outcome {
    Pass,
    VerificationFailure,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Split(args) => commands::split(&args, cli.format, &cli.output),
        Command::Verify(args) => commands::verify(&args, cli.format, &cli.output),
        Command::Bch(args) => commands::bch(&args, cli.format, &cli.output),
        Command::Rabi(args) => commands::rabi(&args, cli.format, &cli.output),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailure) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

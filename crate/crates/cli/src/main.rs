use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uvinfo::Ratio;

mod commands;
mod inputs;

#[derive(Parser)]
#[command(name = "uvinfo", version, about = "Exact non-stochastic information and capacity")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Association sets and the regime of a pair at given levels.
    Analyze(PairArgs),
    /// Mutual information of a pair in each direction that has a level.
    Mi(PairArgs),
    /// Largest distinguishable codebook of a channel at one level.
    Capacity(CapacityArgs),
    /// Finite-horizon rates along a sequence, plus any certified limits.
    Rates(RatesArgs),
    /// Checks one single-letter certificate.
    SingleLetter(SingleLetterArgs),
    /// Coding-theorem, tensorization and symmetry checks on one input.
    Verify(VerifyArgs),
    /// Distance guarantee of a bit-string codebook on a bit-flip channel.
    Hamming(HammingArgs),
    /// Capacity of classifier outputs or of an equivocation matrix.
    Classify(ClassifyArgs),
    /// Replays the bundled worked examples.
    Examples,
}

#[derive(Args)]
pub struct PairArgs {
    /// Pair JSON file.
    #[arg(long)]
    pub pair: String,
    /// Uncertainty function on the x side, e.g. card:5:1.
    #[arg(long)]
    pub mx: Option<String>,
    /// Uncertainty function on the y side, e.g. leb+10.
    #[arg(long)]
    pub my: Option<String>,
    /// Level on the x side.
    #[arg(long)]
    pub delta1: Option<Ratio>,
    /// Level on the y side.
    #[arg(long)]
    pub delta2: Option<Ratio>,
}

#[derive(Args)]
pub struct ChannelArgs {
    /// Channel JSON file.
    #[arg(long)]
    pub channel: String,
    /// Output uncertainty function; defaults to card:|Y|:1.
    #[arg(long)]
    pub m: Option<String>,
}

#[derive(Args)]
pub struct CapacityArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long)]
    pub delta: Ratio,
    /// Also report the average-overlap capacity and comparison bounds.
    #[arg(long)]
    pub average: bool,
    /// Allow a level at or above the least image uncertainty.
    #[arg(long)]
    pub beyond_range: bool,
}

#[derive(Args)]
pub struct SequenceArgs {
    /// geometric:<base>[:<scale>], constant:<delta>, zero, explicit:<d1>,<d2>,...
    /// or inline JSON.
    #[arg(long)]
    pub sequence: Option<String>,
    /// Overrides the first term.
    #[arg(long)]
    pub first: Option<Ratio>,
}

#[derive(Args)]
pub struct RatesArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[command(flatten)]
    pub sequence: SequenceArgs,
    /// Largest horizon to compute.
    #[arg(long, default_value_t = 2)]
    pub horizon: u32,
}

#[derive(Args)]
pub struct SingleLetterArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// t12, cor2, t13 or t14.
    #[arg(long)]
    pub theorem: String,
    /// Comma-separated input symbols.
    #[arg(long)]
    pub codebook: String,
    #[arg(long)]
    pub delta_bar: Option<Ratio>,
    #[arg(long)]
    pub delta1: Option<Ratio>,
    #[command(flatten)]
    pub sequence: SequenceArgs,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Channel JSON file: coding theorem over a grid and tensorization of
    /// the full pair with itself.
    #[arg(long)]
    pub channel: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    /// Pair JSON file: symmetry at levels below every association value.
    #[arg(long)]
    pub pair: Option<String>,
    #[arg(long)]
    pub mx: Option<String>,
    #[arg(long)]
    pub my: Option<String>,
}

#[derive(Args)]
pub struct HammingArgs {
    /// File of newline-separated bit strings.
    #[arg(long, conflicts_with = "pair")]
    pub codebook: Option<String>,
    /// Two bit strings: report only their equivocation.
    #[arg(long, num_args = 2, value_names = ["X1", "X2"])]
    pub pair: Option<Vec<String>>,
    /// Fraction of bits the adversary may flip.
    #[arg(long)]
    pub tau: Ratio,
    #[arg(long, default_value = "0")]
    pub delta: Ratio,
}

#[derive(Args)]
pub struct ClassifyArgs {
    /// CSV with header true,predicted.
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    pub confusion: Option<String>,
    /// Equivocation matrix JSON.
    #[arg(long)]
    pub matrix: Option<String>,
    #[arg(long, default_value = "0")]
    pub delta: Ratio,
}

/// Input problems exit with 2; failed checks come back as a report that is not ok and exit with 1.
pub enum Failure {
    Input(anyhow::Error),
}

macro_rules! input_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Input(e.into())
            }
        }
    )*};
}

input_errors!(anyhow::Error, uvinfo::Error);

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("UVINFO_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("UVINFO_THREADS must be a positive integer, got {v:?}"))?;
        anyhow::ensure!(n > 0, "UVINFO_THREADS must be positive");
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::Analyze(a) => commands::analyze(&a),
        Command::Mi(a) => commands::mi(&a),
        Command::Capacity(a) => commands::capacity(&a),
        Command::Rates(a) => commands::rates(&a),
        Command::SingleLetter(a) => commands::single_letter(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Hamming(a) => commands::hamming(&a),
        Command::Classify(a) => commands::classify(&a),
        Command::Examples => commands::examples(),
    };
    let report = match outcome {
        Ok(report) => report,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n",
        Format::Text => report.text,
    };
    // A closed pipe downstream is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

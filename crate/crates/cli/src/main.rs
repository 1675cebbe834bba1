mod commands;
mod input;
mod output;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CliError;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "dsort", version, about = "Disappear-Sort pass counts, exact and simulated")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the pass count of a sequence (inline, or `@path`).
    Lds {
        /// Also print each layer, one per line.
        #[arg(long)]
        layers: bool,
        input: String,
    },
    /// Print the layers removed by successive passes, one per line.
    Layers {
        /// Print 1-based positions instead of values.
        #[arg(long)]
        positions: bool,
        input: String,
    },
    /// Exact expected pass count of the resampling variant.
    ExactRds {
        #[command(flatten)]
        exact: ExactArgs,
    },
    /// Exact expected pass count of the non-resampling variant.
    ExactDs {
        #[command(flatten)]
        exact: ExactArgs,
    },
    /// Monte Carlo estimate of the mean pass count.
    Simulate(SimulateArgs),
    /// Mean pass count against 2√n over a list of sizes.
    Asymptotics(AsymptoticsArgs),
    /// Run the built-in invariant suites.
    Selftest {
        /// Run only the named suite (repeatable).
        #[arg(long, value_name = "SUITE")]
        only: Vec<String>,
        /// List the suites and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExactArgs {
    /// Sizes: `5`, `2..10`, or a comma list.
    #[arg(long)]
    n: String,
    /// Fractional digits of the decimal column.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=50))]
    precision: u8,
    /// Engine size bound (default 500 for exact-rds, 80 for exact-ds).
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Ds,
    Rds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Permutation,
    Uniform,
    Exponential,
    Normal,
}

#[derive(Debug, Args)]
struct SeedArgs {
    #[arg(long, env = "DSORT_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    /// Sizes: `5`, `2..10`, or a comma list.
    #[arg(long)]
    n: String,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[command(flatten)]
    seed: SeedArgs,
    /// Input distribution for `ds` trials; real-valued modes are a cross-check.
    #[arg(long, value_enum, default_value_t = ModeArg::Permutation)]
    mode: ModeArg,
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=50))]
    precision: u8,
    /// Largest n for which the exact column is computed.
    #[arg(long)]
    exact_max_n: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct AsymptoticsArgs {
    /// Sizes: `5`, `2..10`, or a comma list.
    #[arg(long, default_value = "100,400,1600,6400")]
    ns: String,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[command(flatten)]
    seed: SeedArgs,
    #[command(flatten)]
    out: OutputArgs,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Lds { layers, input } => commands::run_lds(&input, layers),
        Command::Layers { positions, input } => commands::run_layers(&input, positions),
        Command::ExactRds { exact } => commands::run_exact(
            commands::ExactKind::Rds,
            &exact.n,
            exact.precision as usize,
            exact.max_n,
            exact.out.format,
            exact.out.output.as_deref(),
        ),
        Command::ExactDs { exact } => commands::run_exact(
            commands::ExactKind::Ds,
            &exact.n,
            exact.precision as usize,
            exact.max_n,
            exact.out.format,
            exact.out.output.as_deref(),
        ),
        Command::Simulate(a) => commands::run_simulate(&commands::SimulateConfig {
            variant: a.variant,
            sizes: &a.n,
            trials: a.trials,
            seed: a.seed.seed,
            stream: a.seed.stream,
            mode: a.mode,
            precision: a.precision as usize,
            exact_max_n: a.exact_max_n,
            format: a.out.format,
            output: a.out.output.as_deref(),
        }),
        Command::Asymptotics(a) => commands::run_asymptotics(
            &a.ns,
            a.trials,
            a.seed.seed,
            a.seed.stream,
            a.out.format,
            a.out.output.as_deref(),
        ),
        Command::Selftest { only, list } => {
            if list {
                for s in selftest::SUITES {
                    println!("{:<12} {}", s.name, s.description);
                }
                return Ok(());
            }
            selftest::run(&only)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::SelftestFailed(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

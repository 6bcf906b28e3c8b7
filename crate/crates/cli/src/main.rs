use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use qproc_cli::commands::{
    self, cmd_analyze, cmd_compare, cmd_examples, cmd_sample, load_target, CliError, RunConfig,
};

/// Quantum-generator process analysis: exact word distributions, entropy
/// measures, classical equivalents, and seeded sampling.
#[derive(Parser)]
#[command(name = "qproc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TargetArgs {
    /// Builtin system name (see `qproc examples`).
    #[arg(long, value_name = "NAME")]
    example: Option<String>,
    /// Generator spec file.
    #[arg(long, value_name = "PATH")]
    spec: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Directory for output files.
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the entropy curve and all derived information measures.
    Analyze {
        #[command(flatten)]
        target: TargetArgs,
        /// Longest word length (default: 12 for 2-state systems, 24 above).
        #[arg(long, value_name = "INT")]
        lmax: Option<usize>,
        /// Pruning threshold for the exact enumeration.
        #[arg(long, value_name = "REAL", default_value_t = 1e-12)]
        prune_tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample a seeded measurement trajectory and its block frequencies.
    Sample {
        #[command(flatten)]
        target: TargetArgs,
        /// Number of observed symbols.
        #[arg(long, value_name = "INT", default_value_t = 100_000)]
        steps: usize,
        /// PRNG seed; identical seeds reproduce identical trajectories.
        #[arg(long, value_name = "INT", default_value_t = 1)]
        seed: u64,
        /// Empirical block length (default 4).
        #[arg(long, value_name = "INT")]
        lmax: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the classical equivalent and report the worst probability gap.
    Compare {
        #[command(flatten)]
        target: TargetArgs,
        /// Longest word length compared (default 12).
        #[arg(long, value_name = "INT")]
        lmax: Option<usize>,
    },
    /// List the builtin systems.
    Examples,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let max_live_prefixes = commands::max_prefixes_from_env()?;
    match cli.command {
        Command::Analyze {
            target,
            lmax,
            prune_tol,
            output,
        } => {
            let target = load_target(target.example.as_deref(), target.spec.as_deref())?;
            let config = RunConfig {
                l_max: lmax,
                prune_tol,
                out_dir: output.out,
                max_live_prefixes,
                ..Default::default()
            };
            cmd_analyze(&target, &config)
        }
        Command::Sample {
            target,
            steps,
            seed,
            lmax,
            output,
        } => {
            let target = load_target(target.example.as_deref(), target.spec.as_deref())?;
            let config = RunConfig {
                l_max: lmax,
                seed,
                steps,
                out_dir: output.out,
                max_live_prefixes,
                ..Default::default()
            };
            cmd_sample(&target, &config)
        }
        Command::Compare { target, lmax } => {
            let target = load_target(target.example.as_deref(), target.spec.as_deref())?;
            let config = RunConfig {
                l_max: lmax,
                max_live_prefixes,
                ..Default::default()
            };
            cmd_compare(&target, &config)
        }
        Command::Examples => {
            cmd_examples();
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let first_line = e
                .to_string()
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid usage")
                .trim_start_matches("error: ")
                .to_string();
            eprintln!("error[usage]: {first_line}");
            return ExitCode::FAILURE;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

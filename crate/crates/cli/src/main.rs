use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cohbound_cli::commands;
use cohbound_cli::CliError;
use cohbound_core::RoofBudget;
use rand::Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "cohbound",
    version,
    about = "Coherence lower bounds from commutators of observables with their diagonal parts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RoofBudgetArgs {
    /// Random restarts of the decomposition search.
    #[arg(long, default_value_t = 50)]
    restarts: usize,
    /// Refinement steps per restart.
    #[arg(long, default_value_t = 500)]
    iters: usize,
}

impl RoofBudgetArgs {
    fn budget(&self, seed: u64) -> RoofBudget {
        RoofBudget {
            restarts: self.restarts,
            iterations: self.iters,
            seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the coherence lower bound of a state witnessed by an
    /// observable, against the l1 coherence (and optionally the convex
    /// roof).
    Bound {
        /// State file (kind "density" or "state_vector").
        #[arg(long)]
        state: PathBuf,
        /// Observable file (kind "observable"); must be traceless with unit
        /// Frobenius norm unless --normalize is given.
        #[arg(long)]
        observable: PathBuf,
        /// Project out the trace and rescale to unit Frobenius norm.
        #[arg(long)]
        normalize: bool,
        /// Also run the convex-roof search and report its value.
        #[arg(long)]
        roof: bool,
        #[command(flatten)]
        roof_budget: RoofBudgetArgs,
        /// Seed for the roof search (only used with --roof).
        #[arg(long, default_value_t = 0)]
        roof_seed: u64,
    },
    /// Find the traceless unit-norm observable maximizing the bound and
    /// write it to a file.
    Optimize {
        /// State file (kind "density" or "state_vector").
        #[arg(long)]
        state: PathBuf,
        /// Destination for the optimal observable (kind "observable").
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo sweep over random (state, observable) pairs, one CSV row
    /// per trial.
    Sweep {
        /// Comma-separated dimensions, e.g. 2,3,4.
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(2..=32))]
        dims: Vec<u64>,
        /// Trials per dimension.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
        trials: u64,
        /// Base seed; generated and reported when omitted.
        #[arg(long)]
        seed: Option<u64>,
        /// Include the convex-roof estimate in each row.
        #[arg(long)]
        roof: bool,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Record wall-clock per-trial runtimes; off by default so the CSV
        /// is byte-reproducible.
        #[arg(long)]
        timing: bool,
    },
    /// Simulate finite-shot measurement of the witness built from an
    /// observable.
    Witness {
        /// State file (kind "density" or "state_vector").
        #[arg(long)]
        state: PathBuf,
        /// Observable file (kind "observable").
        #[arg(long)]
        observable: PathBuf,
        /// Number of measurement shots.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        /// Sampling seed; generated and reported when omitted.
        #[arg(long)]
        seed: Option<u64>,
        /// Detection threshold in standard errors.
        #[arg(long, default_value_t = 5.0, value_parser = parse_positive)]
        z: f64,
    },
    /// Estimate the convex-roof coherence of a state.
    Roof {
        /// State file (kind "density" or "state_vector").
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        roof_budget: RoofBudgetArgs,
        /// Search seed; generated and reported when omitted.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err("must be a positive finite number".to_owned())
    }
}

/// Fresh entropy for commands invoked without --seed; the chosen value is
/// reported so the run can be reproduced.
fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| rand::rng().random())
}

fn print_report<T: Serialize>(report: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("reports serialize")
    );
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bound {
            state,
            observable,
            normalize,
            roof,
            roof_budget,
            roof_seed,
        } => {
            let budget = roof.then(|| roof_budget.budget(roof_seed));
            print_report(&commands::cmd_bound(
                &state,
                &observable,
                normalize,
                budget,
            )?);
        }
        Command::Optimize { state, out } => {
            print_report(&commands::cmd_optimize(&state, &out)?);
        }
        Command::Sweep {
            dims,
            trials,
            seed,
            roof,
            out,
            timing,
        } => {
            let dims: Vec<usize> = dims.into_iter().map(|d| d as usize).collect();
            let seed = resolve_seed(seed);
            print_report(&commands::cmd_sweep(
                &dims,
                trials as usize,
                seed,
                roof,
                &out,
                timing,
            )?);
        }
        Command::Witness {
            state,
            observable,
            shots,
            seed,
            z,
        } => {
            let seed = resolve_seed(seed);
            print_report(&commands::cmd_witness(&state, &observable, shots, seed, z)?);
        }
        Command::Roof {
            state,
            roof_budget,
            seed,
        } => {
            let seed = resolve_seed(seed);
            print_report(&commands::cmd_roof(&state, roof_budget.budget(seed))?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

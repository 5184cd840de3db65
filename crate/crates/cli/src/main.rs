//! Batch CLI for clustering citation networks and evaluating the results.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "citeclust",
    version,
    about = "Cluster citation-style networks and evaluate the results"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a clustering method (with replications) and write reports.
    Cluster(commands::ClusterArgs),
    /// Evaluate a clustering file: full metrics report to stdout.
    Eval(commands::EvalArgs),
    /// Pairwise distances, method classes, robustness sweeps.
    Compare(commands::CompareArgs),
    /// Network statistics of an edge list.
    Stats(commands::StatsArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Cluster(args) => commands::run_cluster(args),
        Command::Eval(args) => commands::run_eval(args),
        Command::Compare(args) => commands::run_compare(args),
        Command::Stats(args) => commands::run_stats(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

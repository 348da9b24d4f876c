//! `outbreak-opt`: centralities, outbreak simulation and immunization
//! planning for an edge-list network.

mod commands;
mod output;
mod settings;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use commands::SimulateFlags;
use settings::Flags;

#[derive(Parser)]
#[command(version, about = "Targeted immunization against SIR outbreaks on contact networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, betweenness and eigenvector centrality of every node, plus
    /// the pairwise R² between them.
    Centrality {
        #[command(flatten)]
        flags: Flags,
    },
    /// Casualty distribution of repeated outbreaks, optionally after
    /// immunizing given nodes.
    Simulate {
        #[command(flatten)]
        flags: Flags,
        #[command(flatten)]
        sim: SimulateFlags,
    },
    /// Search for the best `k` nodes to immunize with the genetic algorithm.
    Optimize {
        #[command(flatten)]
        flags: Flags,
    },
    /// Evaluate the degree, betweenness, eigenvector, GA and no-protection
    /// strategies side by side.
    Compare {
        #[command(flatten)]
        flags: Flags,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let (flags, extra_keys): (&Flags, &[&str]) = match &cli.command {
        Command::Centrality { flags } | Command::Optimize { flags } | Command::Compare { flags } => (flags, &[]),
        Command::Simulate { flags, .. } => (flags, commands::SIMULATE_KEYS),
    };
    let settings = flags.resolve(extra_keys)?;
    if let Some(threads) = settings.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the worker pool")?;
    }

    let out = settings.out.as_deref();
    match &cli.command {
        Command::Centrality { .. } => commands::centrality(&settings)?.emit(out),
        Command::Simulate { sim, .. } => {
            let (rendered, trace) = commands::simulate(&settings, sim)?;
            rendered.emit(out)?;
            match trace {
                Some((path, csv)) => output::write_atomic(&path, &csv),
                None => Ok(()),
            }
        }
        Command::Optimize { .. } => commands::optimize(&settings)?.emit(out),
        Command::Compare { .. } => commands::compare(&settings)?.emit(out),
    }
}

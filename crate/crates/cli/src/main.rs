//! `branequant` command-line interface.

mod commands;
mod io;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use branequant::graphs::Scheme;

#[derive(Parser, Debug)]
#[command(name = "branequant", version, about = "Brane-decorated graph quantization: products, modules and checks")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand; echoed into every output.
#[derive(Args, Debug, Clone, Serialize)]
pub struct RunArgs {
    /// Truncation order K in ε.
    #[arg(long, global = true, default_value_t = 2)]
    pub order: usize,
    /// Allow K > 2.
    #[arg(long, global = true)]
    pub unsafe_order: bool,
    /// Monte Carlo sample budget per graph.
    #[arg(long, global = true, default_value_t = 6_000_000)]
    pub samples: u64,
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Per-graph standard-error target (stop early once reached).
    #[arg(long, global = true)]
    pub target_stderr: Option<f64>,
    /// Weight cache file (JSON lines).
    #[arg(long, global = true, env = "BRANEQUANT_CACHE")]
    pub cache: Option<std::path::PathBuf>,
    /// Use closed-form weights only; anything else is reported missing.
    #[arg(long, global = true)]
    pub exact_weights: bool,
    /// Write JSON output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Jacobi identity and brane coisotropy.
    Check {
        #[arg(long)]
        poisson: std::path::PathBuf,
        #[arg(long)]
        brane: Vec<std::path::PathBuf>,
    },
    /// Enumerate, prune and integrate one graph family into the cache.
    Weights {
        /// Number of π-vertices.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "H")]
        scheme: Scheme,
        #[arg(long, value_enum, default_value_t = Family::Star)]
        family: Family,
    },
    /// f ⋆ g on the reduced algebra of a brane.
    Star {
        #[arg(long)]
        poisson: std::path::PathBuf,
        /// Brane JSON; the whole space if omitted.
        #[arg(long)]
        brane: Option<std::path::PathBuf>,
        #[arg(long)]
        f: std::path::PathBuf,
        #[arg(long)]
        g: std::path::PathBuf,
    },
    /// ψ ⋆₀ f (right) or f ⋆₁ ψ (left) for a pair of branes.
    Module {
        #[arg(long)]
        poisson: std::path::PathBuf,
        #[arg(long)]
        c0: std::path::PathBuf,
        #[arg(long)]
        c1: std::path::PathBuf,
        #[arg(long, value_enum)]
        side: ModuleSide,
        #[arg(long)]
        psi: std::path::PathBuf,
        #[arg(long)]
        f: std::path::PathBuf,
    },
    /// Extend an invariant function to the deformed reduced algebra.
    Lift {
        #[arg(long)]
        poisson: std::path::PathBuf,
        #[arg(long)]
        brane: std::path::PathBuf,
        #[arg(long)]
        f: std::path::PathBuf,
        #[arg(long, default_value_t = 4)]
        degree_cap: u32,
    },
    /// Run a verification suite over the built-in fixture library.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Two boundary arguments, no field vertices (⋆, ⋆₀, ⋆₁).
    Star,
    /// One field vertex, one boundary argument (A).
    A,
    /// Two field vertices, no boundary (F).
    F,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleSide {
    Right,
    Left,
}

/// Exit statuses.
pub mod code {
    pub const PASS: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const NONCONVERGED: u8 = 3;
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}

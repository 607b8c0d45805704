//! Command-line front end for `apcsf-core`: configuration, file formats and
//! the `apcsf` subcommands.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::SignChoice;
use crate::config::{Format, Overrides, RunConfig};
use crate::error::Result;

#[derive(Debug, Parser)]
#[command(name = "apcsf", version, about = "Shrinkers of the area-preserving curve-shortening flow")]
pub struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (overrides the config file and APCSF_OUT_DIR).
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Comma-separated subset of csv,json,svg.
    #[arg(long, global = true, value_delimiter = ',')]
    pub formats: Option<Vec<Format>>,
    /// Flow node count.
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    /// Flow time-step cap.
    #[arg(long, global = true)]
    pub dt_max: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum of the λ-potential and optional turning points at given energies.
    Potential {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        /// Comma-separated energy levels.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        levels: Vec<f64>,
    },
    /// Semi-period over a log-spaced amplitude-ratio grid, as CSV.
    PeriodScan {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 1.01)]
        r_min: f64,
        #[arg(long, default_value_t = 1e3)]
        r_max: f64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Find and certify the (m, n) shrinker.
    Shrinker { m: u32, n: u32 },
    /// Certify the gallery shrinkers in parallel.
    Gallery {
        /// Comma-separated fractions such as 3/4,2/3.
        #[arg(long)]
        only: Option<String>,
    },
    /// Flow a normally perturbed shrinker and classify the outcome.
    Flow {
        m: u32,
        n: u32,
        /// Normal offset as a fraction of the shrinker diameter.
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        /// +, - or both.
        #[arg(long, allow_hyphen_values = true, default_value = "both")]
        sign: SignChoice,
    },
    /// Rebuild curve CSV/SVG from a shrinker JSON record.
    Export {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Runs a parsed command line. `env_out_dir` is the value of
/// [`config::OUT_DIR_ENV`], passed in so callers control the environment.
pub fn run(cli: Cli, env_out_dir: Option<String>, out: &mut dyn Write) -> Result<i32> {
    let overrides = Overrides { out_dir: cli.out_dir, formats: cli.formats, node_count: cli.nodes, dt_max: cli.dt_max };
    let cfg = RunConfig::resolve(cli.config.as_deref(), env_out_dir, &overrides)?;
    match cli.command {
        Command::Potential { lambda, levels } => commands::potential(lambda, &levels, out),
        Command::PeriodScan { lambda, r_min, r_max, count, output } => {
            commands::period_scan(&cfg, lambda, r_min, r_max, count, output.as_deref(), out)
        }
        Command::Shrinker { m, n } => commands::shrinker(&cfg, m, n, out),
        Command::Gallery { only } => commands::gallery(&cfg, only.as_deref(), out),
        Command::Flow { m, n, eps, sign } => commands::flow(&cfg, m, n, eps, sign, out),
        Command::Export { input } => commands::export(&cfg, &input, out),
    }
}

//! `homophily-lab`: closed forms, graph generation, Monte Carlo runs,
//! sweeps and figure datasets for the two-group homophily model.
//!
//! Data goes to standard output (or `--out`); the resolved configuration
//! and diagnostics go to standard error. Exit codes: 0 success,
//! 2 validation error, 3 I/O error, 4 replicate budget exceeded.

mod commands;
mod config;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "homophily-lab", version, about = "Homophily traps in two-group networks")]
struct Cli {
    /// Flat `key = value` file supplying defaults for any flag.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form edge counts, group degrees, gap and gap slope.
    Analytic(Flags),
    /// Critical minority size (2 + N) / (4N).
    CriticalSize(Flags),
    /// Sample one graph and write it as an edge list.
    Generate(Flags),
    /// Monte Carlo estimates at one parameter point.
    Simulate(Flags),
    /// Analytic (and optionally simulated) values over a parameter grid.
    Sweep(Flags),
    /// Dataset for one figure panel (a-e), or all of them.
    Figure(Flags),
}

#[derive(Debug, Args, Default)]
struct Flags {
    /// Network size N.
    #[arg(long)]
    n: Option<String>,
    /// Minority fraction f0.
    #[arg(long)]
    f0: Option<String>,
    /// Minority intra-group homophily h00.
    #[arg(long)]
    h00: Option<String>,
    /// Majority intra-group homophily h11.
    #[arg(long)]
    h11: Option<String>,
    /// Master seed (default from HOMOPHILY_LAB_SEED).
    #[arg(long)]
    seed: Option<String>,
    /// Monte Carlo replicates per point.
    #[arg(short = 'r', long)]
    replicates: Option<String>,
    /// Output file; `-` for standard output.
    #[arg(short = 'o', long)]
    out: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Figure panel: a, b, c, d, e or all.
    #[arg(long)]
    panel: Option<String>,
    /// Grid over N as start:stop:step, a list, or a single value.
    #[arg(long = "n-grid")]
    n_grid: Option<String>,
    #[arg(long = "f0-grid")]
    f0_grid: Option<String>,
    #[arg(long = "h00-grid")]
    h00_grid: Option<String>,
    #[arg(long = "h11-grid")]
    h11_grid: Option<String>,
    /// Bracket width at which critical-size bisection stops.
    #[arg(long)]
    tol: Option<String>,
    /// Replicate budget for critical-size detection.
    #[arg(long)]
    budget: Option<String>,
    /// Directory receiving fig1<panel>.<format> files.
    #[arg(long = "out-dir")]
    out_dir: Option<String>,
}

impl Flags {
    fn to_map(&self) -> BTreeMap<&'static str, String> {
        let pairs = [
            ("n", &self.n),
            ("f0", &self.f0),
            ("h00", &self.h00),
            ("h11", &self.h11),
            ("seed", &self.seed),
            ("replicates", &self.replicates),
            ("out", &self.out),
            ("format", &self.format),
            ("panel", &self.panel),
            ("n-grid", &self.n_grid),
            ("f0-grid", &self.f0_grid),
            ("h00-grid", &self.h00_grid),
            ("h11-grid", &self.h11_grid),
            ("tol", &self.tol),
            ("budget", &self.budget),
            ("out-dir", &self.out_dir),
        ];
        pairs
            .into_iter()
            .filter_map(|(k, v)| v.clone().map(|v| (k, v)))
            .collect()
    }
}

/// An error with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<homophily_core::Error> for Failure {
    fn from(err: homophily_core::Error) -> Self {
        use homophily_core::Error;
        let code = match err {
            Error::Io(_) => 3,
            Error::BudgetExceeded { .. } => 4,
            _ => 2,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = match &cli.config {
        Some(path) => config::load_config(path)?,
        None => BTreeMap::new(),
    };
    match &cli.command {
        Command::Analytic(f) => commands::analytic(&f.to_map(), &file),
        Command::CriticalSize(f) => commands::critical_size(&f.to_map(), &file),
        Command::Generate(f) => commands::generate(&f.to_map(), &file),
        Command::Simulate(f) => commands::simulate(&f.to_map(), &file),
        Command::Sweep(f) => commands::sweep(&f.to_map(), &file),
        Command::Figure(f) => commands::figure(&f.to_map(), &file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

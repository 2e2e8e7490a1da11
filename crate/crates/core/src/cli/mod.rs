//! Command-line front end. A run is described by one JSON document
//! ([`RunConfig`]); a few flags override individual fields.

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{exit_code, Outcome};
pub use config::{OutputFormat, RunConfig, OUTPUT_DIR_ENV};

use crate::error::Result;
use crate::quantum::Branch;
use crate::reference::{C_SI, HBAR_SI};

#[derive(Debug, Parser)]
#[command(name = "casimir-lab", version, about = "Vacuum forces in a three-degree-of-freedom Casimir toy model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON run configuration
    #[arg(long, short)]
    pub config: PathBuf,
    /// Output directory (overrides config and environment)
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    /// Significant digits per number
    #[arg(long)]
    pub precision: Option<usize>,
    /// csv or json for tabular outputs
    #[arg(long, value_parser = parse_format)]
    pub format: Option<OutputFormat>,
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("unknown format `{other}`, expected csv or json")),
    }
}

fn parse_branch(s: &str) -> std::result::Result<Branch, String> {
    match s {
        "plus" => Ok(Branch::Plus),
        "minus" => Ok(Branch::Minus),
        other => Err(format!("unknown branch `{other}`, expected plus or minus")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-mode frequencies over the grid
    Spectrum(Common),
    /// Vacuum energy and the force by every route over the grid
    ForceCurve {
        #[command(flatten)]
        common: Common,
        /// Add a column from the Fock-space oracle
        #[arg(long)]
        with_oracle: bool,
    },
    /// Bogoliubov coefficients, mean quanta and the pair distribution
    VacuumContent {
        #[command(flatten)]
        common: Common,
        /// y at which the pair distribution is written (default: grid start)
        #[arg(long)]
        pair_y: Option<f64>,
        /// Highest pair number in the distribution
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        #[arg(long, default_value = "plus", value_parser = parse_branch)]
        branch: Branch,
    },
    /// Compare closed forms against exact diagonalization; exit 4 on failure
    OracleCheck {
        #[command(flatten)]
        common: Common,
        /// Fock cutoff per mode
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Semiclassical trajectory of y
    Evolve(Common),
    /// Full classical trajectory of (x1, x2, y)
    Classical(Common),
    /// Perfect-conductor Casimir pressure, SI units by default
    ReferenceCasimir {
        /// Plate separation
        #[arg(long)]
        y: f64,
        /// Plate area; adds the total force
        #[arg(long)]
        area: Option<f64>,
        #[arg(long, default_value_t = C_SI)]
        c: f64,
        #[arg(long, default_value_t = HBAR_SI)]
        hbar: f64,
    },
}

fn load(common: &Common) -> Result<RunConfig> {
    let mut cfg = RunConfig::load(&common.config)?.with_env_overrides();
    if let Some(dir) = &common.output_dir {
        cfg.output.directory = dir.clone();
    }
    if let Some(p) = common.precision {
        cfg.output.precision = p;
    }
    if let Some(f) = common.format {
        cfg.output.format = f;
    }
    Ok(cfg)
}

pub fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Spectrum(c) => commands::cmd_spectrum(&load(c)?),
        Command::ForceCurve { common, with_oracle } => commands::cmd_force_curve(&load(common)?, *with_oracle),
        Command::VacuumContent { common, pair_y, pairs, branch } => {
            commands::cmd_vacuum_content(&load(common)?, *pair_y, *pairs, *branch)
        }
        Command::OracleCheck { common, n_max } => {
            let mut cfg = load(common)?;
            if let Some(n) = n_max {
                cfg.oracle.n_max = *n;
            }
            commands::cmd_oracle_check(&cfg)
        }
        Command::Evolve(c) => commands::cmd_evolve(&load(c)?),
        Command::Classical(c) => commands::cmd_classical(&load(c)?),
        Command::ReferenceCasimir { y, area, c, hbar } => commands::cmd_reference_casimir(*y, *area, *c, *hbar),
    }
}

/// Runs a parsed command line, printing to stdout/stderr, and returns the
/// process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(&cli.command) {
        Ok(outcome) => {
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            println!("{}", outcome.message.trim_end());
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

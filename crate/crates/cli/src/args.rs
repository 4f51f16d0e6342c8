use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::{run, Command};
use crate::error::{CliError, CliResult};
use crate::report::{emit_report, Format, RunConfig};

/// Kadison-Schwarz analysis of unital maps on 3x3 matrices.
///
/// MAP arguments are a map-file path or `catalog:NAME[(ARGS)]`; see
/// `ks3 catalog`. Set KS3_THREADS to cap search parallelism (0 = serial).
#[derive(Debug, Parser)]
#[command(name = "ks3", version)]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Restarts per search.
    #[arg(long, global = true, default_value_t = 200)]
    pub budget: usize,
    /// Tolerance for the Choi test.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Structure constants of su(3) and the certificate constant.
    Constants,
    /// Bloch coefficients of an operator file.
    Decompose { operator: String },
    /// Polar canonical form T = R S of a map.
    Canonical { map: String },
    /// Analytic Kadison-Schwarz certificate.
    Certify { map: String },
    /// Numerical search for a Kadison-Schwarz violation.
    Search { map: String },
    /// CP / KS / positivity verdicts.
    Classify { map: String },
    /// List the named maps, or print one in map-file form.
    Catalog { map: Option<String> },
    /// Grid over a diagonal family, one row per map.
    Sweep {
        /// e.g. "mu=(a,a,a,a,b,b,b,b)"
        #[arg(long)]
        family: String,
        /// start:end:step, inclusive
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
}

impl Cli {
    pub fn config(&self) -> CliResult<RunConfig> {
        Ok(RunConfig {
            seed: self.seed,
            budget: self.budget,
            tol: self.tol,
            format: self.format,
            output_path: self.out.clone(),
            threads: RunConfig::threads_from_env()?,
        })
    }

    pub fn into_command(self) -> Command {
        match self.command {
            Sub::Constants => Command::Constants,
            Sub::Decompose { operator } => Command::Decompose { operator },
            Sub::Canonical { map } => Command::Canonical { map },
            Sub::Certify { map } => Command::Certify { map },
            Sub::Search { map } => Command::Search { map },
            Sub::Classify { map } => Command::Classify { map },
            Sub::Catalog { map } => Command::Catalog { map },
            Sub::Sweep { family, a, b } => Command::Sweep { family, a, b },
        }
    }
}

/// Runs a parsed invocation and writes the report.
pub fn execute(cli: Cli) -> CliResult<()> {
    let config = cli.config()?;
    let report = run(&cli.into_command(), &config)?;
    let bytes = emit_report(&report, &config)?;
    match &config.output_path {
        Some(path) => std::fs::write(path, bytes).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

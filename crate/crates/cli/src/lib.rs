//! Command-line front end for `ks3-core`: map files, the named-map catalog,
//! one subcommand per analysis, and canonical JSON / CSV reports.

pub mod args;
pub mod commands;
pub mod error;
pub mod mapfile;
pub mod report;
pub mod spec;
pub mod sweep;

pub use args::{execute, Cli};
pub use commands::{run, Command};
pub use error::{CliError, CliResult};
pub use mapfile::{parse_map_file, parse_map_value, to_map_value};
pub use report::{emit_report, Format, Report, RunConfig};
pub use spec::load_map;

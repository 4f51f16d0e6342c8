//! Reports and their canonical serializations.
//!
//! JSON output has sorted keys and every float printed with 17 significant
//! digits, so a report is byte-stable for a fixed input and config.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub budget: usize,
    pub tol: f64,
    pub format: Format,
    pub output_path: Option<PathBuf>,
    /// Worker threads for searches; 0 runs serially. Results do not depend
    /// on it, so it is not echoed in reports.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            budget: 200,
            tol: 1e-9,
            format: Format::Json,
            output_path: None,
            threads: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.budget == 0 {
            return Err(CliError::Usage("--budget must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage("--tol must be a positive number".into()));
        }
        Ok(())
    }

    /// `KS3_THREADS` when set, otherwise the available parallelism.
    pub fn threads_from_env() -> CliResult<usize> {
        match std::env::var("KS3_THREADS") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("KS3_THREADS must be an integer, got `{s}`"))),
            Err(_) => Ok(std::thread::available_parallelism().map_or(0, |n| n.get())),
        }
    }

    fn echo(&self) -> Value {
        serde_json::json!({"seed": self.seed, "budget": self.budget, "tol": self.tol})
    }
}

/// Rows for CSV output with a fixed column order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub results: Value,
    pub table: Option<Table>,
    /// JSON output is `results` alone, e.g. a map file.
    pub bare: bool,
}

impl Report {
    pub fn new(command: &str, results: Value) -> Self {
        Self {
            command: command.into(),
            results,
            table: None,
            bare: false,
        }
    }

    pub fn bare(mut self) -> Self {
        self.bare = true;
        self
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn to_value(&self, config: &RunConfig) -> Value {
        serde_json::json!({
            "command": self.command,
            "config": config.echo(),
            "results": self.results,
            "version": VERSION,
            "c3_recipe": ks3_core::ks::C3_RECIPE,
        })
    }
}

pub fn emit_report(report: &Report, config: &RunConfig) -> CliResult<Vec<u8>> {
    match config.format {
        Format::Json => {
            let mut out = String::new();
            let value = if report.bare {
                report.results.clone()
            } else {
                report.to_value(config)
            };
            write_canonical(&mut out, &value, 0);
            out.push('\n');
            Ok(out.into_bytes())
        }
        Format::Csv => emit_csv(report, config),
    }
}

fn emit_csv(report: &Report, config: &RunConfig) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match &report.table {
        Some(t) => {
            w.write_record(&t.header)?;
            for row in &t.rows {
                w.write_record(row.iter().map(scalar))?;
            }
        }
        None => {
            let mut cells = vec![
                ("command".to_string(), Value::String(report.command.clone())),
                ("seed".to_string(), config.seed.into()),
                ("budget".to_string(), config.budget.into()),
                ("tol".to_string(), config.tol.into()),
            ];
            flatten("", &report.results, &mut cells);
            w.write_record(cells.iter().map(|(k, _)| k))?;
            w.write_record(cells.iter().map(|(_, v)| scalar(v)))?;
        }
    }
    w.into_inner()
        .map_err(|e| CliError::Csv(e.into_error().into()))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            for k in keys {
                flatten(&join(k), &m[k], out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        _ => out.push((prefix.to_string(), v.clone())),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(_) => number(v),
        other => {
            let mut s = String::new();
            write_canonical(&mut s, other, usize::MAX);
            s
        }
    }
}

/// Integers as integers, other numbers with 17 significant digits.
fn number(v: &Value) -> String {
    if let Some(i) = v.as_i64() {
        return i.to_string();
    }
    if let Some(u) = v.as_u64() {
        return u.to_string();
    }
    match v.as_f64() {
        Some(x) => format!("{x:.16e}"),
        None => "null".into(),
    }
}

/// Pretty-printed JSON with sorted keys; `indent == usize::MAX` is compact.
fn write_canonical(out: &mut String, v: &Value, indent: usize) {
    let compact = indent == usize::MAX;
    let inner = if compact { indent } else { indent + 1 };
    let pad = |out: &mut String, level: usize| {
        if !compact {
            out.push('\n');
            out.push_str(&"  ".repeat(level));
        }
    };
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Value::Number(_) => out.push_str(&number(v)),
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(a) if a.is_empty() => out.push_str("[]"),
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Array(a) => {
            // scalars and [re, im] pairs stay on one line
            let flat = a.iter().all(|x| match x {
                Value::Object(_) => false,
                Value::Array(p) => {
                    p.len() <= 2 && p.iter().all(|y| !y.is_object() && !y.is_array())
                }
                _ => true,
            });
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                    if flat && !compact {
                        out.push(' ');
                    }
                }
                if flat {
                    write_canonical(out, x, usize::MAX);
                } else {
                    pad(out, inner);
                    write_canonical(out, x, inner);
                }
            }
            if !flat {
                pad(out, indent);
            }
            out.push(']');
        }
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                pad(out, inner);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                if !compact {
                    out.push(' ');
                }
                write_canonical(out, &m[k], inner);
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

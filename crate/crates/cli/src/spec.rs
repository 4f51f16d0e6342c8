//! Map arguments: a map-file path or `catalog:NAME[(ARGS)]`.

use std::path::Path;

use ks3_core::map::catalog;
use ks3_core::numerics::ComplexMatrix;
use ks3_core::random::{haar_unitary, rng_for};
use ks3_core::{Complex64, UnitalMap};

use crate::error::{CliError, CliResult};
use crate::mapfile::parse_map_file;

pub const CATALOG_PREFIX: &str = "catalog:";

/// Catalog entries with their accepted argument forms.
pub const CATALOG: &[(&str, &str)] = &[
    ("identity", "X -> X"),
    ("transposition", "X -> X^T"),
    ("depolarizing(p)", "X -> p X + (1 - p) Tr(X) I / 3"),
    ("completely_depolarizing", "X -> Tr(X) I / 3"),
    (
        "unitary_conjugation(seed=N | theta=x)",
        "X -> U X U^dag with U Haar-random from seed N, or U = diag(1, 1, e^{i x})",
    ),
];

pub fn load_map(arg: &str) -> CliResult<UnitalMap> {
    match arg.strip_prefix(CATALOG_PREFIX) {
        Some(entry) => catalog_map(entry),
        None => parse_map_file(Path::new(arg)),
    }
}

pub fn catalog_map(entry: &str) -> CliResult<UnitalMap> {
    let (name, args) = split_call(entry)?;
    let no_args = |m: UnitalMap| {
        if args.is_some() {
            Err(CliError::Usage(format!(
                "catalog map `{name}` takes no arguments"
            )))
        } else {
            Ok(m)
        }
    };
    match name {
        "identity" => no_args(catalog::identity()),
        "transposition" => no_args(catalog::transposition()),
        "completely_depolarizing" => no_args(catalog::completely_depolarizing()),
        "depolarizing" => {
            let (key, value) = single_arg(name, args)?;
            if !matches!(key, None | Some("p")) {
                return Err(CliError::Usage("depolarizing takes `p`".into()));
            }
            Ok(catalog::depolarizing(number(value)?)?)
        }
        "unitary_conjugation" => {
            let (key, value) = single_arg(name, args)?;
            let u = match key {
                Some("seed") => {
                    let seed = value
                        .parse::<u64>()
                        .map_err(|_| CliError::Usage(format!("bad seed `{value}`")))?;
                    haar_unitary(&mut rng_for(seed, 0x5543), 3)
                }
                Some("theta") => {
                    let theta = number(value)?;
                    ComplexMatrix::from_fn(3, |i, j| match (i, j) {
                        (2, 2) => Complex64::from_polar(1.0, theta),
                        (i, j) if i == j => Complex64::new(1.0, 0.0),
                        _ => Complex64::new(0.0, 0.0),
                    })
                }
                _ => {
                    return Err(CliError::Usage(
                        "unitary_conjugation takes `seed=N` or `theta=x`".into(),
                    ))
                }
            };
            let label = format!("unitary_conjugation({})", args.unwrap_or_default());
            Ok(catalog::unitary_conjugation(&u)?.with_label(label))
        }
        other => Err(CliError::Usage(format!(
            "unknown catalog map `{other}`; try `ks3 catalog`"
        ))),
    }
}

fn split_call(entry: &str) -> CliResult<(&str, Option<&str>)> {
    match entry.find('(') {
        None => Ok((entry.trim(), None)),
        Some(open) => {
            let rest = &entry[open + 1..];
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| CliError::Usage(format!("unbalanced parentheses in `{entry}`")))?;
            Ok((entry[..open].trim(), Some(inner.trim())))
        }
    }
}

fn single_arg<'a>(name: &str, args: Option<&'a str>) -> CliResult<(Option<&'a str>, &'a str)> {
    let args =
        args.ok_or_else(|| CliError::Usage(format!("catalog map `{name}` needs an argument")))?;
    Ok(match args.split_once('=') {
        Some((k, v)) => (Some(k.trim()), v.trim()),
        None => (None, args),
    })
}

fn number(s: &str) -> CliResult<f64> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(CliError::Usage(format!(
            "expected a finite number, got `{s}`"
        ))),
    }
}

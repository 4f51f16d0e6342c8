use std::path::Path;

use ks3_core::classify::certify_map;
use ks3_core::gellmann::{su3, su3_constants};
use ks3_core::ks::{spread_bound, CERTIFY_SLACK};
use ks3_core::{
    c3_constant, canonical_form, certify_ks, classify, decompose, is_cp, search_violation, Budgets,
    SearchOptions, UnitalMap,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::mapfile::{parse_operator_value, read_json, to_map_value};
use crate::report::{Report, RunConfig, Table};
use crate::spec::{load_map, CATALOG};
use crate::sweep::{parse_grid, Family};

pub const SWEEP_HEADER: [&str; 7] = [
    "a",
    "b",
    "mu_spread",
    "certified",
    "violation_found",
    "min_eig",
    "cp",
];

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Constants,
    Decompose {
        operator: String,
    },
    Canonical {
        map: String,
    },
    Certify {
        map: String,
    },
    Search {
        map: String,
    },
    Classify {
        map: String,
    },
    Catalog {
        map: Option<String>,
    },
    Sweep {
        family: String,
        a: Option<String>,
        b: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Constants => "constants",
            Command::Decompose { .. } => "decompose",
            Command::Canonical { .. } => "canonical",
            Command::Certify { .. } => "certify",
            Command::Search { .. } => "search",
            Command::Classify { .. } => "classify",
            Command::Catalog { .. } => "catalog",
            Command::Sweep { .. } => "sweep",
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> CliResult<Value> {
    Ok(serde_json::to_value(v)?)
}

fn with_map(map: &UnitalMap, mut results: Value) -> Value {
    if let Value::Object(m) = &mut results {
        m.insert("map".into(), Value::String(map.label().to_string()));
    }
    results
}

pub fn run(command: &Command, config: &RunConfig) -> CliResult<Report> {
    config.validate()?;
    let name = command.name();
    let opts = SearchOptions::new(config.budget, config.seed).with_threads(config.threads);
    let results = match command {
        Command::Constants => constants(),
        Command::Decompose { operator } => {
            let x = parse_operator_value(&read_json(Path::new(operator))?)?;
            let v = decompose(&x, su3())?;
            let mut out = to_json(&v)?;
            out["hermitian"] = Value::Bool(x.hermiticity_residual() <= ks3_core::bloch::INGEST_TOL);
            out
        }
        Command::Canonical { map } => {
            let map = load_map(map)?;
            let mut out = to_json(&canonical_form(map.bloch())?)?;
            out["T"] = json!(map.bloch().t.to_rows());
            with_map(&map, out)
        }
        Command::Certify { map } => {
            let map = load_map(map)?;
            with_map(&map, to_json(&certify_map(&map)?)?)
        }
        Command::Search { map } => {
            let map = load_map(map)?;
            with_map(&map, to_json(&search_violation(&map, &opts)?)?)
        }
        Command::Classify { map } => {
            let map = load_map(map)?;
            let c = classify(
                &map,
                Budgets::uniform(config.budget),
                config.seed,
                config.tol,
                config.threads,
            )?;
            with_map(&map, to_json(&c)?)
        }
        Command::Catalog { map: None } => {
            let entries: Vec<Value> = CATALOG
                .iter()
                .map(|(name, action)| json!({"name": name, "action": action}))
                .collect();
            let report = Report::new(name, json!({"maps": entries})).with_table(Table {
                header: vec!["name".into(), "action".into()],
                rows: CATALOG
                    .iter()
                    .map(|(n, a)| vec![Value::from(*n), Value::from(*a)])
                    .collect(),
            });
            return Ok(report);
        }
        Command::Catalog { map: Some(spec) } => {
            return Ok(Report::new(name, to_map_value(&load_map(spec)?)).bare());
        }
        Command::Sweep { family, a, b } => {
            return sweep(family, a.as_deref(), b.as_deref(), config, &opts)
        }
    };
    Ok(Report::new(name, results))
}

fn constants() -> Value {
    let sc = su3_constants();
    let triples = |v: Vec<(usize, usize, usize, f64)>| -> Vec<Value> {
        v.into_iter()
            .map(|(i, j, k, value)| json!({"i": i, "j": j, "k": k, "value": value}))
            .collect()
    };
    let c3 = c3_constant(sc);
    json!({
        "index_base": 0,
        "f_nonzero": triples(sc.f_nonzero(1e-14)),
        "d_nonzero": triples(sc.d_nonzero(1e-14)),
        "c3": c3,
        "spread_bound": spread_bound(c3),
        "certify_slack": CERTIFY_SLACK,
    })
}

fn sweep(
    family: &str,
    a: Option<&str>,
    b: Option<&str>,
    config: &RunConfig,
    opts: &SearchOptions,
) -> CliResult<Report> {
    let fam = Family::parse(family)?;
    for v in fam.variables() {
        if v != "a" && v != "b" {
            return Err(CliError::Usage(format!(
                "sweep variables are `a` and `b`, found `{v}`"
            )));
        }
    }
    let grid = |var: &str, flag: Option<&str>| -> CliResult<Vec<Option<f64>>> {
        match (fam.uses(var), flag) {
            (true, Some(g)) => Ok(parse_grid(g)?.into_iter().map(Some).collect()),
            (true, None) => Err(CliError::Usage(format!(
                "family uses `{var}` but --{var} is missing"
            ))),
            (false, Some(_)) => Err(CliError::Usage(format!(
                "--{var} given but the family does not use `{var}`"
            ))),
            (false, None) => Ok(vec![None]),
        }
    };
    let (ga, gb) = (grid("a", a)?, grid("b", b)?);
    let c3 = c3_constant(su3_constants());

    let mut rows = Vec::with_capacity(ga.len() * gb.len());
    let mut table = Vec::with_capacity(rows.capacity());
    for &va in &ga {
        for &vb in &gb {
            let mu = fam.mu(va.unwrap_or(f64::NAN), vb.unwrap_or(f64::NAN));
            let map = UnitalMap::from_diagonal(&mu)?;
            let cert = certify_ks(&mu, c3);
            let search = search_violation(&map, opts)?;
            let (cp, _) = is_cp(&map, config.tol)?;
            let spread = cert.spread;
            rows.push(json!({
                "a": va, "b": vb, "mu": mu, "mu_spread": spread,
                "certified": cert.is_certified(), "violation_found": search.found(),
                "min_eig": search.best_min_eig, "cp": cp,
            }));
            table.push(vec![
                json!(va),
                json!(vb),
                json!(spread),
                json!(cert.is_certified()),
                json!(search.found()),
                json!(search.best_min_eig),
                json!(cp),
            ]);
        }
    }
    let results = json!({
        "family": family,
        "a": a,
        "b": b,
        "c3": c3,
        "spread_bound": spread_bound(c3),
        "rows": rows,
    });
    Ok(Report::new("sweep", results).with_table(Table {
        header: SWEEP_HEADER.iter().map(|s| s.to_string()).collect(),
        rows: table,
    }))
}

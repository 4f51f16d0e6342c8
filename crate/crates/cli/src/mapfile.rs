//! JSON map files and operator files.
//!
//! ```text
//! {"d": 3, "kind": "bloch",          "T":      8x8 reals}
//! {"d": 3, "kind": "bloch_diagonal", "mu":     8 reals}
//! {"d": 3, "kind": "kraus",          "ops":    [3x3 complex, ...]}
//! {"d": 3, "kind": "choi",           "matrix": 9x9 complex}
//! ```
//!
//! Complex entries are `[re, im]` pairs. An optional `"label"` string names the
//! map in reports. Operator files are `{"d": 3, "matrix": 3x3 complex}`.

use std::path::Path;

use ks3_core::numerics::{ComplexMatrix, RealMatrix};
use ks3_core::{Complex64, UnitalMap};
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};

const DIM: usize = 3;
const BLOCH_LEN: usize = DIM * DIM - 1;

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn parse_map_file(path: &Path) -> CliResult<UnitalMap> {
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "map".into());
    let map = parse_map_value(&read_json(path)?)?;
    Ok(if map.label().is_empty() {
        map.with_label(label)
    } else {
        map
    })
}

pub fn parse_map_value(v: &Value) -> CliResult<UnitalMap> {
    let obj = object(v, "")?;
    check_dimension(obj)?;
    let kind = match obj.get("kind") {
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return Err(CliError::schema("/kind", "expected a string")),
        None => return Err(CliError::schema("/kind", "missing")),
    };
    let payload = match kind {
        "bloch" => "T",
        "bloch_diagonal" => "mu",
        "kraus" => "ops",
        "choi" => "matrix",
        other => {
            return Err(CliError::schema(
                "/kind",
                format!("unknown kind `{other}`; expected bloch, bloch_diagonal, kraus or choi"),
            ))
        }
    };
    for key in obj.keys() {
        if !matches!(key.as_str(), "d" | "kind" | "label") && key != payload {
            return Err(CliError::schema(
                format!("/{key}"),
                format!("unexpected key for kind `{kind}`"),
            ));
        }
    }
    let pointer = format!("/{payload}");
    let value = obj
        .get(payload)
        .ok_or_else(|| CliError::schema(&pointer, "missing"))?;

    let map = match kind {
        "bloch" => {
            let rows = real_rows(value, &pointer, BLOCH_LEN, BLOCH_LEN)?;
            UnitalMap::from_bloch(RealMatrix::from_rows(&rows)?)?
        }
        "bloch_diagonal" => UnitalMap::from_diagonal(&real_vector(value, &pointer, BLOCH_LEN)?)?,
        "kraus" => {
            let ops = array(value, &pointer)?;
            if ops.is_empty() {
                return Err(CliError::schema(
                    &pointer,
                    "need at least one Kraus operator",
                ));
            }
            let ops = ops
                .iter()
                .enumerate()
                .map(|(i, op)| complex_matrix(op, &format!("{pointer}/{i}"), DIM))
                .collect::<CliResult<Vec<_>>>()?;
            UnitalMap::from_kraus(ops)?
        }
        _ => UnitalMap::from_choi(complex_matrix(value, &pointer, DIM * DIM)?)?,
    };
    Ok(match obj.get("label") {
        Some(Value::String(s)) => map.with_label(s.clone()),
        Some(_) => return Err(CliError::schema("/label", "expected a string")),
        None => map.with_label(""),
    })
}

/// Operator file for `decompose`.
pub fn parse_operator_value(v: &Value) -> CliResult<ComplexMatrix> {
    let obj = object(v, "")?;
    check_dimension(obj)?;
    for key in obj.keys() {
        if key != "d" && key != "matrix" {
            return Err(CliError::schema(format!("/{key}"), "unexpected key"));
        }
    }
    let m = obj
        .get("matrix")
        .ok_or_else(|| CliError::schema("/matrix", "missing"))?;
    complex_matrix(m, "/matrix", DIM)
}

/// Map-file form of a map: `bloch_diagonal` when `T` is diagonal, `bloch`
/// otherwise.
pub fn to_map_value(map: &UnitalMap) -> Value {
    let t = &map.bloch().t;
    match map.bloch().diagonal_entries(0.0) {
        Some(mu) => json!({"d": DIM, "kind": "bloch_diagonal", "label": map.label(), "mu": mu}),
        None => json!({"d": DIM, "kind": "bloch", "label": map.label(), "T": t.to_rows()}),
    }
}

fn check_dimension(obj: &Map<String, Value>) -> CliResult<()> {
    match obj.get("d") {
        Some(d) if d.as_u64() == Some(DIM as u64) => Ok(()),
        Some(d) if d.as_u64().is_some() => {
            Err(CliError::Core(ks3_core::Error::DimensionMismatch {
                expected: DIM,
                got: d.as_u64().unwrap_or_default() as usize,
            }))
        }
        Some(_) => Err(CliError::schema("/d", "expected an integer")),
        None => Err(CliError::schema("/d", "missing")),
    }
}

fn object<'a>(v: &'a Value, pointer: &str) -> CliResult<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| CliError::schema(pointer, "expected an object"))
}

fn array<'a>(v: &'a Value, pointer: &str) -> CliResult<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| CliError::schema(pointer, "expected an array"))
}

fn sized<'a>(v: &'a Value, pointer: &str, len: usize) -> CliResult<&'a Vec<Value>> {
    let a = array(v, pointer)?;
    if a.len() != len {
        return Err(CliError::schema(
            pointer,
            format!("expected {len} entries, found {}", a.len()),
        ));
    }
    Ok(a)
}

fn real(v: &Value, pointer: &str) -> CliResult<f64> {
    match v.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(CliError::schema(pointer, "expected a finite number")),
    }
}

fn real_vector(v: &Value, pointer: &str, len: usize) -> CliResult<Vec<f64>> {
    sized(v, pointer, len)?
        .iter()
        .enumerate()
        .map(|(i, x)| real(x, &format!("{pointer}/{i}")))
        .collect()
}

fn real_rows(v: &Value, pointer: &str, rows: usize, cols: usize) -> CliResult<Vec<Vec<f64>>> {
    sized(v, pointer, rows)?
        .iter()
        .enumerate()
        .map(|(i, row)| real_vector(row, &format!("{pointer}/{i}"), cols))
        .collect()
}

fn complex(v: &Value, pointer: &str) -> CliResult<Complex64> {
    let pair = real_vector(v, pointer, 2)
        .map_err(|_| CliError::schema(pointer, "expected a [re, im] pair"))?;
    Ok(Complex64::new(pair[0], pair[1]))
}

fn complex_matrix(v: &Value, pointer: &str, dim: usize) -> CliResult<ComplexMatrix> {
    let mut data = Vec::with_capacity(dim * dim);
    for (i, row) in sized(v, pointer, dim)?.iter().enumerate() {
        let row_ptr = format!("{pointer}/{i}");
        for (j, z) in sized(row, &row_ptr, dim)?.iter().enumerate() {
            data.push(complex(z, &format!("{row_ptr}/{j}"))?);
        }
    }
    Ok(ComplexMatrix::from_vec(dim, data)?)
}

pub fn complex_matrix_value(m: &ComplexMatrix) -> Value {
    let n = m.dim();
    Value::Array(
        (0..n)
            .map(|i| {
                Value::Array(
                    (0..n)
                        .map(|j| json!([m[(i, j)].re, m[(i, j)].im]))
                        .collect(),
                )
            })
            .collect(),
    )
}

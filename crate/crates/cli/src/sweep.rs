//! Parameter grids over diagonal `mu` families.

use crate::error::{CliError, CliResult};

/// Grid endpoints are included when within this distance of a grid point.
pub const GRID_TOL: f64 = 1e-12;
const MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum Slot {
    Var(String),
    Fixed(f64),
}

/// `mu=(a,a,a,a,b,b,b,b)`: eight slots, each a variable name or a number.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    pub slots: Vec<Slot>,
}

impl Family {
    pub fn parse(s: &str) -> CliResult<Self> {
        let bad = |why: &str| CliError::Usage(format!("bad --family `{s}`: {why}"));
        let body = s
            .trim()
            .strip_prefix("mu")
            .map(str::trim_start)
            .and_then(|r| r.strip_prefix('='))
            .map(str::trim)
            .ok_or_else(|| bad("expected `mu=(...)`"))?;
        let inner = body
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("expected parentheses"))?;
        let slots = inner
            .split(',')
            .map(|t| {
                let t = t.trim();
                if let Ok(x) = t.parse::<f64>() {
                    if x.is_finite() {
                        return Ok(Slot::Fixed(x));
                    }
                }
                if !t.is_empty() && t.chars().all(|c| c.is_ascii_alphabetic()) {
                    Ok(Slot::Var(t.to_string()))
                } else {
                    Err(bad(&format!("`{t}` is neither a number nor a variable")))
                }
            })
            .collect::<CliResult<Vec<_>>>()?;
        if slots.len() != 8 {
            return Err(bad(&format!("expected 8 entries, found {}", slots.len())));
        }
        Ok(Self { slots })
    }

    pub fn uses(&self, var: &str) -> bool {
        self.slots
            .iter()
            .any(|s| matches!(s, Slot::Var(v) if v == var))
    }

    pub fn variables(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for s in &self.slots {
            if let Slot::Var(v) = s {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn mu(&self, a: f64, b: f64) -> Vec<f64> {
        self.slots
            .iter()
            .map(|s| match s {
                Slot::Fixed(x) => *x,
                Slot::Var(v) if v == "a" => a,
                Slot::Var(_) => b,
            })
            .collect()
    }
}

/// Inclusive grid from `start:end:step`.
pub fn parse_grid(s: &str) -> CliResult<Vec<f64>> {
    let bad = |why: &str| CliError::Usage(format!("bad grid `{s}`: {why}"));
    let parts: Vec<f64> = s
        .split(':')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| bad("expected start:end:step"))
        })
        .collect::<CliResult<_>>()?;
    let [start, end, step] = parts[..] else {
        return Err(bad("expected start:end:step"));
    };
    if !(start.is_finite() && end.is_finite() && step.is_finite()) {
        return Err(bad("values must be finite"));
    }
    if start > end {
        return Err(bad("start exceeds end"));
    }
    if start == end {
        return Ok(vec![start]);
    }
    if step <= 0.0 {
        return Err(bad("step must be positive"));
    }
    let mut out = Vec::new();
    for i in 0.. {
        let x = start + i as f64 * step;
        if (x - end).abs() <= GRID_TOL {
            out.push(end);
            break;
        }
        if x > end {
            break;
        }
        if out.len() == MAX_POINTS {
            return Err(bad("too many points"));
        }
        out.push(x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_grid_has_eleven_points() {
        let g = parse_grid("0:1:0.1").unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g[10], 1.0);
        assert_eq!(parse_grid("0.5:0.5:0.1").unwrap(), vec![0.5]);
        assert_eq!(parse_grid("0:1:0.3").unwrap().len(), 4);
        assert_eq!(parse_grid("-0.2:1:0.01").unwrap().len(), 121);
    }

    #[test]
    fn bad_grids() {
        for g in ["0:1", "1:0:0.1", "0:1:0", "0:1:-1", "a:1:0.1", "0:inf:1"] {
            assert!(parse_grid(g).is_err(), "{g}");
        }
    }

    #[test]
    fn family_slots() {
        let f = Family::parse("mu=(a,a,a,a,b,b,b,b)").unwrap();
        assert_eq!(f.variables(), vec!["a", "b"]);
        assert_eq!(f.mu(0.1, 0.2), vec![0.1, 0.1, 0.1, 0.1, 0.2, 0.2, 0.2, 0.2]);
        let f = Family::parse("mu = (a, 1, 1, 1, 1, 1, 1, 0.5)").unwrap();
        assert!(!f.uses("b"));
        assert_eq!(f.mu(0.0, 9.0)[7], 0.5);
        assert!(Family::parse("mu=(a,b)").is_err());
        assert!(Family::parse("x=(a,a,a,a,b,b,b,b)").is_err());
        assert!(Family::parse("mu=(a,a,a,a,b,b,b,b*2)").is_err());
    }
}

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::{catalog, UnitalMap};
use crate::numerics::{inverse_sqrt, ComplexMatrix};
use crate::random::{ginibre, haar_unitary, rng_for, simplex_weights};

/// Residual accepted for the unital and trace-preserving projection of a
/// random Kraus map.
pub const KRAUS_PROJECTION_TOL: f64 = 1e-10;
const SINKHORN_ITERATIONS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RandomMapKind {
    /// Each `mu_k` uniform in `[lo, hi]`.
    DiagonalMu { lo: f64, hi: f64 },
    /// `Σ p_i U_i X U_i^dag` with Haar unitaries and flat Dirichlet weights.
    UnitaryMixture { terms: usize },
    /// Ginibre Kraus operators scaled to a unital, trace-preserving map.
    Kraus { terms: usize },
}

pub fn sample_random_map(kind: RandomMapKind, seed: u64) -> Result<UnitalMap> {
    let mut rng = rng_for(seed, 0x5341_4d50);
    match kind {
        RandomMapKind::DiagonalMu { lo, hi } => {
            if !(-1.0..=1.0).contains(&lo) || !(-1.0..=1.0).contains(&hi) || lo > hi {
                return Err(Error::InvalidParameter(format!(
                    "mu box [{lo}, {hi}] must lie inside [-1, 1]"
                )));
            }
            let mu: Vec<f64> = (0..8)
                .map(|_| {
                    if lo == hi {
                        lo
                    } else {
                        rng.random_range(lo..=hi)
                    }
                })
                .collect();
            UnitalMap::from_diagonal(&mu)
        }
        RandomMapKind::UnitaryMixture { terms } => {
            if terms == 0 {
                return Err(Error::InvalidParameter("need at least one unitary".into()));
            }
            let unitaries: Vec<ComplexMatrix> =
                (0..terms).map(|_| haar_unitary(&mut rng, 3)).collect();
            if terms == 1 {
                return catalog::unitary_conjugation(&unitaries[0]);
            }
            let weights = simplex_weights(&mut rng, terms);
            let ops = unitaries
                .into_iter()
                .zip(weights)
                .map(|(u, p)| u.scale_real(p.sqrt()))
                .collect();
            UnitalMap::from_kraus(ops).map(|m| m.with_label("unitary_mixture"))
        }
        RandomMapKind::Kraus { terms } => {
            if terms == 0 {
                return Err(Error::InvalidParameter(
                    "need at least one Kraus operator".into(),
                ));
            }
            let ops: Vec<ComplexMatrix> = (0..terms).map(|_| ginibre(&mut rng, 3)).collect();
            let ops = doubly_stochastic(ops)?;
            UnitalMap::from_kraus(ops).map(|m| m.with_label("random_kraus"))
        }
    }
}

fn residuals(ops: &[ComplexMatrix]) -> (ComplexMatrix, ComplexMatrix) {
    let mut a = ComplexMatrix::zeros(3);
    let mut b = ComplexMatrix::zeros(3);
    for k in ops {
        a = &a + &k.matmul(&k.adjoint());
        b = &b + &k.adjoint().matmul(k);
    }
    (a, b)
}

/// Alternately rescale so that `Σ K K^dag = I` and `Σ K^dag K = I`; rejects
/// the sample if both residuals do not fall below the tolerance.
fn doubly_stochastic(mut ops: Vec<ComplexMatrix>) -> Result<Vec<ComplexMatrix>> {
    let id = ComplexMatrix::identity(3);
    for _ in 0..SINKHORN_ITERATIONS {
        let (a, _) = residuals(&ops);
        let Some(left) = inverse_sqrt(&a, 1e-12)? else {
            return Err(Error::RejectedSample("Σ K K^dag is singular".into()));
        };
        ops = ops.iter().map(|k| left.matmul(k)).collect();
        let (_, b) = residuals(&ops);
        let Some(right) = inverse_sqrt(&b, 1e-12)? else {
            return Err(Error::RejectedSample("Σ K^dag K is singular".into()));
        };
        ops = ops.iter().map(|k| k.matmul(&right)).collect();

        let (a, b) = residuals(&ops);
        let unital = (&a - &id).frobenius_norm();
        let tp = (&b - &id).frobenius_norm();
        if unital < KRAUS_PROJECTION_TOL && tp < KRAUS_PROJECTION_TOL {
            return Ok(ops);
        }
    }
    Err(Error::RejectedSample(format!(
        "unital projection did not reach {KRAUS_PROJECTION_TOL:e} in {SINKHORN_ITERATIONS} iterations"
    )))
}

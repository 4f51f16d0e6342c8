//! Kadison-Schwarz analysis: the difference operator
//! `Δ(X) = Φ(X^dag X) - Φ(X^dag) Φ(X)`, its Bloch expansion for diagonal
//! maps, the analytic certifier, the numerical falsifier, and the contraction
//! and normal-operator audits.

mod certify;
mod expansion;
mod search;

pub use certify::{
    c3_constant, certify_ks, spread_bound, CertificateVerdict, KSCertificate, C3_RECIPE,
    CERTIFY_SLACK,
};
pub use expansion::{ks_expansion, KSExpansion};
pub use search::{
    search_violation, KSWitness, ViolationSearch, MAX_ITERATIONS, VIOLATION_THRESHOLD,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::UnitalMap;
use crate::numerics::{eigvals_hermitian, min_eigenvalue, ComplexMatrix};
use crate::random::{hermitian, normal, rng_for};

/// Tolerance on `||Φ(A)|| <= ||A||`.
pub const CONTRACTION_TOL: f64 = 1e-10;
/// PSD tolerance for `Δ(X)` on normal `X`.
pub const NORMAL_PSD_TOL: f64 = 1e-9;

const CONTRACTION_DOMAIN: u64 = 0x434f_4e54_5241_4354;
const NORMAL_DOMAIN: u64 = 0x4e4f_524d_414c_5858;

/// `Φ(X^dag X) - Φ(X^dag) Φ(X)`, returned as its Hermitian part.
pub fn ks_difference(map: &UnitalMap, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let raw = ks_difference_raw(map, x)?;
    Ok(raw.hermitian_part())
}

/// The difference exactly as computed, without symmetrization.
pub fn ks_difference_raw(map: &UnitalMap, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: x.dim(),
        });
    }
    let xd = x.adjoint();
    let lhs = map.apply(&xd.matmul(x));
    let rhs = map.apply(&xd).matmul(&map.apply(x));
    Ok(&lhs - &rhs)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionReport {
    pub samples: usize,
    pub seed: u64,
    /// Largest `||Φ(A)|| / ||A||` observed (operator norms).
    pub max_ratio: f64,
    /// Samples with `||Φ(A)|| > ||A|| + tol`.
    pub violations: usize,
    pub tol: f64,
}

impl ContractionReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn operator_norm(h: &ComplexMatrix) -> Result<f64> {
    let e = eigvals_hermitian(h)?;
    Ok(e.iter().fold(0.0f64, |m, v| m.max(v.abs())))
}

/// Samples random Hermitian `A` and checks `||Φ(A)|| <= ||A||`.
pub fn kadison_contraction_check(
    map: &UnitalMap,
    samples: usize,
    seed: u64,
) -> Result<ContractionReport> {
    let mut rng = rng_for(seed ^ CONTRACTION_DOMAIN, 0);
    let mut max_ratio: f64 = 0.0;
    let mut violations = 0;
    for _ in 0..samples {
        let a = hermitian(&mut rng, 3);
        let na = operator_norm(&a)?;
        let nphi = operator_norm(&map.apply(&a).hermitian_part())?;
        if nphi > na + CONTRACTION_TOL {
            violations += 1;
        }
        if na > 0.0 {
            max_ratio = max_ratio.max(nphi / na);
        }
    }
    Ok(ContractionReport {
        samples,
        seed,
        max_ratio,
        violations,
        tol: CONTRACTION_TOL,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalAuditReport {
    pub samples: usize,
    pub seed: u64,
    /// Smallest `λ_min(Δ(X))` over the sampled normal `X`.
    pub worst_min_eig: f64,
    pub non_psd: usize,
    pub tol: f64,
}

impl NormalAuditReport {
    pub fn all_psd(&self) -> bool {
        self.non_psd == 0
    }
}

/// Checks `Δ(X) >= 0` on random normal `X`.
pub fn normal_operator_audit(
    map: &UnitalMap,
    samples: usize,
    seed: u64,
) -> Result<NormalAuditReport> {
    let mut rng = rng_for(seed ^ NORMAL_DOMAIN, 0);
    let mut worst = f64::INFINITY;
    let mut non_psd = 0;
    for _ in 0..samples {
        let x = normal(&mut rng, 3);
        let m = min_eigenvalue(&ks_difference(map, &x)?)?;
        if m < -NORMAL_PSD_TOL {
            non_psd += 1;
        }
        worst = worst.min(m);
    }
    Ok(NormalAuditReport {
        samples,
        seed,
        worst_min_eig: worst,
        non_psd,
        tol: NORMAL_PSD_TOL,
    })
}

//! Sufficient Kadison-Schwarz condition for diagonal Bloch matrices on `M_3`.
//!
//! A map with Bloch matrix `diag(mu)` is certified when every `mu_k` lies in
//! `[0, 1]` and `max_ij |mu_i - mu_j| <= 2 sqrt(2) / (3 C3)`.

use serde::Serialize;

use crate::gellmann::StructureConstants;
use crate::numerics::{eig_symmetric, RealMatrix};

/// Slack on the range and spread clauses.
pub const CERTIFY_SLACK: f64 = 1e-12;

/// Identifier of the `C3` recipe, echoed in every report.
pub const C3_RECIPE: &str = "c3 = (3*sqrt(2)/2) * sum_k sigma_max(D_k), (D_k)_ij = d_ijk";

/// `C3 = (3 sqrt 2 / 2) Σ_k σ_max(D_k)` with `(D_k)_ij = d_ijk`.
///
/// `σ_max(D_k)` bounds `|Σ_ij d_ijk conj(w_i) w_j| <= σ_max(D_k) ||w||^2`, the
/// `sqrt 2` is the operator norm of each generator, and `3/2` converts
/// `||w||^2 <= (3/2) ||X^dag X||`.
pub fn c3_constant(sc: &StructureConstants) -> f64 {
    let n = sc.len();
    let total: f64 = (0..n)
        .map(|k| {
            let slice = RealMatrix::from_rows(&sc.d_slice(k)).expect("square slice");
            let (vals, _) = eig_symmetric(&slice).expect("symmetric slice");
            vals.iter().fold(0.0f64, |m, v| m.max(v.abs()))
        })
        .sum();
    1.5 * std::f64::consts::SQRT_2 * total
}

/// `2 sqrt 2 / (3 C3)`; infinite when `C3 = 0`.
pub fn spread_bound(c3: f64) -> f64 {
    2.0 * std::f64::consts::SQRT_2 / (3.0 * c3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateVerdict {
    Certified,
    NotCertified,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KSCertificate {
    pub verdict: CertificateVerdict,
    pub mu: Vec<f64>,
    /// `max_k |mu_k|`.
    pub mu_max: f64,
    pub mu_min: f64,
    pub spread: f64,
    pub bound: f64,
    pub c3: f64,
    pub c3_recipe: &'static str,
    /// Failed clauses, empty when certified.
    pub reasons: Vec<String>,
    /// The range clause requires `mu_k >= 0`, stricter than `|mu_k| <= 1`.
    pub note: &'static str,
}

impl KSCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == CertificateVerdict::Certified
    }
}

pub fn certify_ks(mu: &[f64], c3: f64) -> KSCertificate {
    let bound = spread_bound(c3);
    let mut reasons = Vec::new();
    let finite = !mu.is_empty() && mu.iter().all(|m| m.is_finite());
    let (mut lo, mut hi, mut abs_max) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for &m in mu {
        lo = lo.min(m);
        hi = hi.max(m);
        abs_max = abs_max.max(m.abs());
    }
    let spread = hi - lo;
    if !finite {
        reasons.push("mu must be a non-empty vector of finite values".to_string());
    } else {
        if abs_max > 1.0 + CERTIFY_SLACK {
            reasons.push(format!("contraction: max |mu_k| = {abs_max} > 1"));
        }
        for (k, &m) in mu.iter().enumerate() {
            if m < -CERTIFY_SLACK {
                reasons.push(format!("nonnegativity: mu[{k}] = {m} < 0"));
            }
        }
        if !(spread <= bound + CERTIFY_SLACK) {
            reasons.push(format!(
                "spread: max |mu_i - mu_j| = {spread} > bound {bound}"
            ));
        }
    }
    KSCertificate {
        verdict: if reasons.is_empty() {
            CertificateVerdict::Certified
        } else {
            CertificateVerdict::NotCertified
        },
        mu: mu.to_vec(),
        mu_max: abs_max,
        mu_min: lo,
        spread,
        bound,
        c3,
        c3_recipe: C3_RECIPE,
        reasons,
        note: "range clause uses mu in [0,1] (PSD canonical factor), stricter than |mu_k| <= 1",
    }
}

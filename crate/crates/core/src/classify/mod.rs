//! Placement of a map in the hierarchy CP ⊂ KS ⊂ Pos.
//!
//! Complete positivity is decided exactly from the Choi matrix. The KS verdict
//! combines the analytic certificate with the falsifier; positivity is only
//! ever falsified. Verdicts that rest on a search carry its budget and seed.

mod choi;
mod positivity;
mod sample;

pub use choi::{choi_matrix, is_cp};
pub use positivity::{positivity_search, PositivitySearch, PositivityWitness};
pub use sample::{sample_random_map, RandomMapKind, KRAUS_PROJECTION_TOL};

use serde::Serialize;

use crate::bloch::{canonical_form, INGEST_TOL};
use crate::error::Result;
use crate::gellmann::su3_constants;
use crate::ks::{
    c3_constant, certify_ks, search_violation, KSCertificate, KSWitness, ViolationSearch,
};
use crate::map::UnitalMap;
use crate::numerics::eig_symmetric;
use crate::optimize::SearchOptions;

/// Which `mu` the certificate was evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateScope {
    /// `T` is diagonal; the certificate applies to the map itself.
    Diagonal,
    /// `T` is symmetric; `mu` is its spectrum, i.e. the certificate applies to
    /// the map with Bloch matrix `diag(mu)` in a rotated generator basis.
    SymmetricSpectrum,
    /// `T` is not symmetric; `mu` is the spectrum of the polar factor `S`.
    PolarCanonical,
}

impl CertificateScope {
    /// Only a diagonal Bloch matrix is covered directly by the certificate.
    pub fn is_direct(self) -> bool {
        self == CertificateScope::Diagonal
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScopedCertificate {
    pub scope: CertificateScope,
    #[serde(flatten)]
    pub certificate: KSCertificate,
}

/// `mu` for the certifier and the scope it applies to.
pub fn certificate_mu(map: &UnitalMap) -> Result<(CertificateScope, Vec<f64>)> {
    let b = map.bloch();
    if let Some(mu) = b.diagonal_entries(INGEST_TOL) {
        return Ok((CertificateScope::Diagonal, mu));
    }
    if b.t.asymmetry() <= INGEST_TOL {
        let (vals, _) = eig_symmetric(&b.t)?;
        return Ok((CertificateScope::SymmetricSpectrum, vals));
    }
    Ok((CertificateScope::PolarCanonical, canonical_form(b)?.mu))
}

pub fn certify_map(map: &UnitalMap) -> Result<ScopedCertificate> {
    let (scope, mu) = certificate_mu(map)?;
    let c3 = c3_constant(su3_constants());
    Ok(ScopedCertificate {
        scope,
        certificate: certify_ks(&mu, c3),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CpVerdict {
    Yes { min_choi_eig: f64 },
    No { min_choi_eig: f64 },
}

impl CpVerdict {
    pub fn is_cp(&self) -> bool {
        matches!(self, CpVerdict::Yes { .. })
    }

    pub fn min_choi_eig(&self) -> f64 {
        match *self {
            CpVerdict::Yes { min_choi_eig } | CpVerdict::No { min_choi_eig } => min_choi_eig,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum KsVerdict {
    Certified,
    Violated { witness: KSWitness },
    NoViolationFound { budget: usize, seed: u64 },
}

impl KsVerdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, KsVerdict::Violated { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PositiveVerdict {
    Violated { witness: PositivityWitness },
    NoViolationFound { budget: usize, seed: u64 },
}

impl PositiveVerdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, PositiveVerdict::Violated { .. })
    }
}

/// Search budgets for a classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub ks: usize,
    pub positivity: usize,
}

impl Budgets {
    pub fn uniform(budget: usize) -> Self {
        Self {
            ks: budget,
            positivity: budget,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationMetadata {
    pub seed: u64,
    pub budgets: Budgets,
    pub cp_tol: f64,
    pub violation_threshold: f64,
    pub c3: f64,
    pub c3_recipe: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapClassification {
    pub cp: CpVerdict,
    pub ks: KsVerdict,
    pub positive: PositiveVerdict,
    pub certificate: ScopedCertificate,
    pub ks_search: SearchSummary,
    pub positivity_search: SearchSummary,
    /// Inconsistencies between verdicts; empty in a consistent run.
    pub findings: Vec<String>,
    pub metadata: ClassificationMetadata,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchSummary {
    pub best_min_eig: f64,
    pub restarts_run: usize,
}

impl From<&ViolationSearch> for SearchSummary {
    fn from(s: &ViolationSearch) -> Self {
        Self {
            best_min_eig: s.best_min_eig,
            restarts_run: s.restarts_run,
        }
    }
}

impl From<&PositivitySearch> for SearchSummary {
    fn from(s: &PositivitySearch) -> Self {
        Self {
            best_min_eig: s.best_min_eig,
            restarts_run: s.restarts_run,
        }
    }
}

/// Runs the Choi test, the certifier, the KS falsifier and the positivity
/// falsifier, and assembles the verdicts.
pub fn classify(
    map: &UnitalMap,
    budgets: Budgets,
    seed: u64,
    cp_tol: f64,
    threads: usize,
) -> Result<MapClassification> {
    let (cp, min_choi_eig) = is_cp(map, cp_tol)?;
    let cp = if cp {
        CpVerdict::Yes { min_choi_eig }
    } else {
        CpVerdict::No { min_choi_eig }
    };
    let certificate = certify_map(map)?;
    let ks_opts = SearchOptions::new(budgets.ks, seed).with_threads(threads);
    let ks_search = search_violation(map, &ks_opts)?;
    let pos_opts = SearchOptions::new(budgets.positivity, seed).with_threads(threads);
    let pos_search = positivity_search(map, &pos_opts)?;

    let mut findings = Vec::new();
    let certified = certificate.certificate.is_certified() && certificate.scope.is_direct();
    let ks = match (&ks_search.witness, certified) {
        (Some(w), cert) => {
            if cert {
                findings.push(format!(
                    "certified map has a KS witness with min eigenvalue {:e}",
                    w.min_eig
                ));
            }
            KsVerdict::Violated { witness: w.clone() }
        }
        (None, true) => KsVerdict::Certified,
        (None, false) => KsVerdict::NoViolationFound {
            budget: budgets.ks,
            seed,
        },
    };
    let positive = match &pos_search.witness {
        Some(w) => PositiveVerdict::Violated { witness: w.clone() },
        None => PositiveVerdict::NoViolationFound {
            budget: budgets.positivity,
            seed,
        },
    };
    if cp.is_cp() && ks.is_violated() {
        findings.push("CP map with a KS violation".to_string());
    }
    if positive.is_violated() && !ks.is_violated() {
        findings.push(if certified {
            "certified KS map is not positive".to_string()
        } else {
            "non-positive map without a KS witness".to_string()
        });
    }
    if cp.is_cp() && positive.is_violated() {
        findings.push("CP map with a positivity violation".to_string());
    }

    let c3 = certificate.certificate.c3;
    Ok(MapClassification {
        cp,
        ks,
        positive,
        ks_search: SearchSummary::from(&ks_search),
        positivity_search: SearchSummary::from(&pos_search),
        certificate,
        findings,
        metadata: ClassificationMetadata {
            seed,
            budgets,
            cp_tol,
            violation_threshold: crate::ks::VIOLATION_THRESHOLD,
            c3,
            c3_recipe: crate::ks::C3_RECIPE,
        },
    })
}

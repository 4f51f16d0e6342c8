//! Numerical falsifier for the Kadison-Schwarz inequality.
//!
//! Minimizes `λ_min(Δ(X))` over `||X||_F = 1`. The objective is
//! `min_{ψ, X} <ψ|Δ(X)|ψ>`, and each block has an exact minimizer:
//!
//! * for fixed `X`, `ψ` is the lowest eigenvector of `Δ(X)`;
//! * for fixed `ψ`, `<ψ|Δ(X)|ψ> = x^dag Q_ψ x` is a Hermitian form in
//!   `x = vec(X) ∈ C^9` with
//!   `Q_ab = δ_ik <ψ|M_jl|ψ> - <M_ij ψ|M_kl ψ>` for `a = (i, j)`, `b = (k, l)`
//!   and `M_ij = Φ(E_ij)`, so `X` is its lowest eigenvector.
//!
//! Alternating the two exact block minimizations is a derivative-free
//! block-coordinate descent that never increases the objective; random
//! restarts cover the nonconvex landscape.

use num_complex::Complex64;
use serde::Serialize;

use super::ks_difference;
use crate::error::Result;
use crate::map::{combine_blocks, UnitalMap};
use crate::numerics::{eig_hermitian, min_eigenvalue, ComplexMatrix};
use crate::optimize::{multistart, SearchOptions};
use crate::random::{rng_for, unit_ginibre};

/// Objective values below this are violations.
pub const VIOLATION_THRESHOLD: f64 = -1e-7;
/// Block-coordinate iterations per restart.
pub const MAX_ITERATIONS: usize = 200;
const STALL_TOL: f64 = 1e-13;
const KS_DOMAIN: u64 = 0x4b53_5f56_494f_4c41;

/// A concrete `X` (unit Frobenius norm) with `Δ(X)` not PSD.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KSWitness {
    #[serde(serialize_with = "crate::serialize_complex_matrix")]
    pub x: ComplexMatrix,
    /// `λ_min(Δ(X))` recomputed from the map's action.
    pub min_eig: f64,
    pub frobenius_norm_x: f64,
    pub restart: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationSearch {
    /// Lowest `λ_min(Δ(X))` reached by the optimizer.
    pub best_min_eig: f64,
    pub budget: usize,
    pub seed: u64,
    pub restarts_run: usize,
    pub threshold: f64,
    pub witness: Option<KSWitness>,
}

impl ViolationSearch {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

/// Multi-start search for a Kadison-Schwarz violation.
pub fn search_violation(map: &UnitalMap, opts: &SearchOptions) -> Result<ViolationSearch> {
    opts.validate()?;
    let images = map.unit_images();
    let seed = opts.seed ^ KS_DOMAIN;
    let best = multistart(opts, VIOLATION_THRESHOLD, |restart| {
        let mut rng = rng_for(seed, restart as u64);
        let start = unit_ginibre(&mut rng, 3);
        refine(&images, start)
    });

    let mut witness = None;
    if best.value < VIOLATION_THRESHOLD {
        let x = best.point;
        let min_eig = min_eigenvalue(&ks_difference(map, &x)?)?;
        if min_eig < VIOLATION_THRESHOLD {
            witness = Some(KSWitness {
                frobenius_norm_x: x.frobenius_norm(),
                x,
                min_eig,
                restart: best.restart,
            });
        }
    }
    Ok(ViolationSearch {
        best_min_eig: best.value,
        budget: opts.budget,
        seed: opts.seed,
        restarts_run: best.restarts_run,
        threshold: VIOLATION_THRESHOLD,
        witness,
    })
}

/// `Δ(X)` from the unit images.
fn delta(images: &[ComplexMatrix; 9], x: &ComplexMatrix) -> ComplexMatrix {
    let xd = x.adjoint();
    let phi_xx = combine_blocks(images, &xd.matmul(x));
    let phi_x = combine_blocks(images, x);
    let phi_xd = combine_blocks(images, &xd);
    (&phi_xx - &phi_xd.matmul(&phi_x)).hermitian_part()
}

fn refine(images: &[ComplexMatrix; 9], start: ComplexMatrix) -> (f64, ComplexMatrix) {
    let mut x = start;
    let mut best = (f64::INFINITY, x.clone());
    for _ in 0..MAX_ITERATIONS {
        let Ok(e) = eig_hermitian(&delta(images, &x)) else {
            break;
        };
        let value = e.min();
        let improved = value < best.0 - STALL_TOL;
        if value < best.0 {
            best = (value, x.clone());
        }
        if !improved {
            break;
        }
        let psi = e.eigenvector(0);
        let q = form_for(images, &psi);
        let Ok(qe) = eig_hermitian(&q) else {
            break;
        };
        let v = qe.eigenvector(0);
        x = ComplexMatrix::from_fn(3, |i, j| v[3 * i + j]);
    }
    best
}

/// `Q_ψ` with `<ψ|Δ(X)|ψ> = vec(X)^dag Q_ψ vec(X)`.
fn form_for(images: &[ComplexMatrix; 9], psi: &[Complex64]) -> ComplexMatrix {
    let m_psi: Vec<Vec<Complex64>> = images.iter().map(|m| m.mul_vec(psi)).collect();
    let expect: Vec<Complex64> = m_psi
        .iter()
        .map(|v| psi.iter().zip(v).map(|(a, b)| a.conj() * b).sum())
        .collect();
    let q = ComplexMatrix::from_fn(9, |a, b| {
        let (i, j) = (a / 3, a % 3);
        let (k, l) = (b / 3, b % 3);
        let overlap: Complex64 = m_psi[a]
            .iter()
            .zip(&m_psi[b])
            .map(|(u, v)| u.conj() * v)
            .sum();
        let first = if i == k {
            expect[3 * j + l]
        } else {
            Complex64::new(0.0, 0.0)
        };
        first - overlap
    });
    q.hermitian_part()
}

//! Rank-one positivity falsifier.
//!
//! By linearity and the spectral decomposition of PSD inputs, a map is
//! positive iff `Φ(|ψ><ψ|) >= 0` for all unit `ψ`. The objective
//! `min_{ψ, φ} <φ|Φ(|ψ><ψ|)|φ>` is minimized by alternating exact block
//! steps: `φ` is the lowest eigenvector of `Φ(|ψ><ψ|)`, and for fixed `φ`
//! the value is `χ^dag G χ` with `χ = conj(ψ)` and `G_ij = <φ|Φ(E_ij)|φ>`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::map::{combine_blocks, UnitalMap};
use crate::numerics::{eig_hermitian, min_eigenvalue, ComplexMatrix};
use crate::optimize::{multistart, SearchOptions};
use crate::random::{complex_gaussian, rng_for};

pub use crate::ks::VIOLATION_THRESHOLD;

const MAX_ITERATIONS: usize = 200;
const STALL_TOL: f64 = 1e-13;
const POS_DOMAIN: u64 = 0x504f_5349_5449_5645;

/// A unit vector `ψ` with `Φ(|ψ><ψ|)` not PSD.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityWitness {
    #[serde(serialize_with = "crate::serialize_complex_vec")]
    pub psi: Vec<Complex64>,
    /// `λ_min(Φ(|ψ><ψ|))` recomputed from the map's action.
    pub min_eig: f64,
    pub restart: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivitySearch {
    pub best_min_eig: f64,
    pub budget: usize,
    pub seed: u64,
    pub restarts_run: usize,
    pub threshold: f64,
    pub witness: Option<PositivityWitness>,
}

impl PositivitySearch {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

fn projector(psi: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::outer(psi, psi)
}

fn unit(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= n);
    v
}

pub fn positivity_search(map: &UnitalMap, opts: &SearchOptions) -> Result<PositivitySearch> {
    opts.validate()?;
    let images = map.unit_images();
    let seed = opts.seed ^ POS_DOMAIN;
    let best = multistart(opts, VIOLATION_THRESHOLD, |restart| {
        let mut rng = rng_for(seed, restart as u64);
        let start = unit((0..3).map(|_| complex_gaussian(&mut rng)).collect());
        refine(&images, start)
    });

    let mut witness = None;
    if best.value < VIOLATION_THRESHOLD {
        let psi = best.point;
        let min_eig = min_eigenvalue(&map.apply(&projector(&psi)).hermitian_part())?;
        if min_eig < VIOLATION_THRESHOLD {
            witness = Some(PositivityWitness {
                psi,
                min_eig,
                restart: best.restart,
            });
        }
    }
    Ok(PositivitySearch {
        best_min_eig: best.value,
        budget: opts.budget,
        seed: opts.seed,
        restarts_run: best.restarts_run,
        threshold: VIOLATION_THRESHOLD,
        witness,
    })
}

fn refine(images: &[ComplexMatrix; 9], start: Vec<Complex64>) -> (f64, Vec<Complex64>) {
    let mut psi = start;
    let mut best = (f64::INFINITY, psi.clone());
    for _ in 0..MAX_ITERATIONS {
        let image = combine_blocks(images, &projector(&psi)).hermitian_part();
        let Ok(e) = eig_hermitian(&image) else {
            break;
        };
        let value = e.min();
        let improved = value < best.0 - STALL_TOL;
        if value < best.0 {
            best = (value, psi.clone());
        }
        if !improved {
            break;
        }
        let phi = e.eigenvector(0);
        let g = ComplexMatrix::from_fn(3, |i, j| {
            let m = &images[3 * i + j];
            let mphi = m.mul_vec(&phi);
            phi.iter().zip(&mphi).map(|(a, b)| a.conj() * b).sum()
        })
        .hermitian_part();
        let Ok(ge) = eig_hermitian(&g) else {
            break;
        };
        psi = ge.eigenvector(0).into_iter().map(|z| z.conj()).collect();
    }
    best
}

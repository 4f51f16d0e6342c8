//! Seeded random matrices. Every consumer derives its generator from a
//! `(seed, stream)` pair so that restarts can run in any order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::numerics::ComplexMatrix;

/// Generator for `stream` under `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Ginibre matrix: i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| complex_gaussian(rng))
}

/// Unit-Frobenius-norm Ginibre matrix.
pub fn unit_ginibre<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim);
    let n = g.frobenius_norm();
    g.scale_real(1.0 / n)
}

/// `(G + G^dag) / 2` for a Ginibre `G`.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    ginibre(rng, dim).hermitian_part()
}

/// Haar-distributed unitary: Gram-Schmidt on the columns of a Ginibre matrix,
/// which is QR with a positive diagonal in `R`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|i| g[(i, j)]).collect();
        for _ in 0..2 {
            for q in &cols {
                let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// Random normal matrix `U diag(z) U^dag` with Haar `U` and complex Gaussian
/// spectrum.
pub fn normal<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let u = haar_unitary(rng, dim);
    let z: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_fn(dim, |i, j| {
        (0..dim).map(|k| u[(i, k)] * z[k] * u[(j, k)].conj()).sum()
    })
}

/// Convex weights from normalized exponentials (flat Dirichlet).
pub fn simplex_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_is_unitary() {
        let mut rng = rng_for(7, 0);
        for _ in 0..20 {
            let u = haar_unitary(&mut rng, 3);
            assert!(u.unitarity_residual() < 1e-14);
        }
    }

    #[test]
    fn normal_commutes_with_adjoint() {
        let mut rng = rng_for(1, 2);
        let x = normal(&mut rng, 3);
        let xd = x.adjoint();
        assert!((&x.matmul(&xd) - &xd.matmul(&x)).frobenius_norm() < 1e-13);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = ginibre(&mut rng_for(3, 1), 3);
        let b = ginibre(&mut rng_for(3, 1), 3);
        let c = ginibre(&mut rng_for(3, 2), 3);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn weights_sum_to_one() {
        let w = simplex_weights(&mut rng_for(0, 0), 5);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(w.iter().all(|&x| x >= 0.0));
    }
}

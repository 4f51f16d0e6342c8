//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `h_pq`, then applies a
//! real Givens rotation chosen with Rutishauser's small-angle formula. Sweeps
//! run over the strict upper triangle in row order until the off-diagonal
//! Frobenius mass drops below `OFF_DIAGONAL_TOL * ||H||_F`.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, RealMatrix};
use crate::error::{Error, Result};

pub const OFF_DIAGONAL_TOL: f64 = 1e-14;
pub const MAX_SWEEPS: usize = 100;
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues in ascending order with the matching unitary eigenvector
/// columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenResult {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let n = self.eigenvectors.dim();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    /// `U diag(e) U^dag`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let u = &self.eigenvectors;
        let n = u.dim();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| u[(i, k)] * u[(j, k)].conj() * self.eigenvalues[k])
                .sum()
        })
    }
}

fn check_hermitian(h: &ComplexMatrix) -> Result<()> {
    let residual = h.hermiticity_residual();
    if !(residual <= HERMITIAN_TOL * h.frobenius_norm().max(1.0)) {
        return Err(Error::NonHermitianInput { residual });
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<EigenResult> {
    check_hermitian(h)?;
    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let target = OFF_DIAGONAL_TOL * scale;

    let mut converged = off_diagonal_norm(&a) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&a) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    // stable: ties keep the column order produced by the rotation sequence
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(EigenResult {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, ascending.
pub fn eigvals_hermitian(h: &ComplexMatrix) -> Result<Vec<f64>> {
    eig_hermitian(h).map(|e| e.eigenvalues)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    eig_hermitian(h).map(|e| e.min())
}

/// Real symmetric eigendecomposition. The Jacobi rotations stay real for real
/// input, so the eigenvectors are returned as a real orthogonal matrix.
pub fn eig_symmetric(m: &RealMatrix) -> Result<(Vec<f64>, RealMatrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    let res = eig_hermitian(&m.to_complex())?;
    let n = m.rows();
    let vecs = RealMatrix::from_fn(n, n, |i, j| res.eigenvectors[(i, j)].re);
    Ok((res.eigenvalues, vecs))
}

/// `true` iff the smallest eigenvalue of `h` is at least `-tol`.
pub fn is_psd(h: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(h)? >= -tol)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // phase e^{-i arg(apq)}
    let phase = apq.conj() / g;

    // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on columns p, q.
    let g00 = Complex64::new(c, 0.0);
    let g01 = Complex64::new(s, 0.0);
    let g10 = phase * -s;
    let g11 = phase * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g00 + akq * g10;
        a[(k, q)] = akp * g01 + akq * g11;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g00.conj() * apk + g10.conj() * aqk;
        a[(q, k)] = g01.conj() * apk + g11.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g00 + vkq * g10;
        v[(k, q)] = vkp * g01 + vkq * g11;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_spectrum() {
        let e = eig_hermitian(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_sorted() {
        let e = eig_hermitian(&ComplexMatrix::from_real_diagonal(&[-1.0, 0.0, 2.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![-1.0, 0.0, 2.0]);
        let e = eig_hermitian(&ComplexMatrix::from_real_diagonal(&[2.0, -1.0, 0.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![-1.0, 0.0, 2.0]);
        assert_eq!(e.eigenvectors[(1, 0)], c(1.0, 0.0));
    }

    #[test]
    fn lambda8_spectrum() {
        // roots of the characteristic polynomial of diag(1, 1, -2)/sqrt(3)
        let s = 3f64.sqrt();
        let h = ComplexMatrix::from_real_diagonal(&[1.0 / s, 1.0 / s, -2.0 / s]);
        let e = eig_hermitian(&h).unwrap();
        let want = [-2.0 / s, 1.0 / s, 1.0 / s];
        for (got, want) in e.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn complex_two_by_two() {
        // [[1, i], [-i, 1]] has spectrum {0, 2}
        let h =
            ComplexMatrix::from_vec(2, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)])
                .unwrap();
        let e = eig_hermitian(&h).unwrap();
        assert!(e.eigenvalues[0].abs() < 1e-15);
        assert!((e.eigenvalues[1] - 2.0).abs() < 1e-15);
        assert!((&e.reconstruct() - &h).frobenius_norm() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let h =
            ComplexMatrix::from_vec(2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
                .unwrap();
        assert!(matches!(
            eig_hermitian(&h),
            Err(Error::NonHermitianInput { .. })
        ));
        assert!(is_psd(&h, 1e-9).is_err());
    }

    #[test]
    fn psd_thresholds() {
        let zero = ComplexMatrix::zeros(3);
        assert!(is_psd(&zero, 1e-9).unwrap());
        let transposition_delta = ComplexMatrix::from_real_diagonal(&[-1.0, 1.0, 0.0]);
        assert!(!is_psd(&transposition_delta, 1e-9).unwrap());
        let tiny = ComplexMatrix::from_real_diagonal(&[-5e-10, 1.0, 1.0]);
        assert!(is_psd(&tiny, 1e-9).unwrap());
    }

    #[test]
    fn real_symmetric_vectors_are_real() {
        let m = RealMatrix::from_rows(&[
            vec![2.0, -1.0, 0.0],
            vec![-1.0, 2.0, -1.0],
            vec![0.0, -1.0, 2.0],
        ])
        .unwrap();
        let (vals, vecs) = eig_symmetric(&m).unwrap();
        let want = [2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        for (a, b) in vals.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(vecs.orthogonality_residual() < 1e-14);
    }
}

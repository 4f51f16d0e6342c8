//! Real polar decomposition `T = R S` for square matrices, singular ones
//! included.
//!
//! The right singular vectors come from a one-sided (Hestenes) Jacobi sweep,
//! which diagonalizes `T^T T` implicitly: column pairs of `T V` are rotated
//! until mutually orthogonal. Then `S = V diag(sigma) V^T` and
//! `R = U V^T`, where the columns of `U` are the normalized columns of `T V`
//! completed by Gram-Schmidt on the kernel of `S`.

use super::matrix::RealMatrix;
use crate::error::{Error, Result};

const ORTHO_TOL: f64 = 1e-15;
const MAX_SWEEPS: usize = 100;
/// Columns of `T V` with norm below this fraction of `||T||_F` span the kernel.
const RANK_TOL: f64 = 1e-14;

/// Singular values (ascending) with right singular vectors as columns.
#[derive(Debug, Clone)]
pub struct RightSingular {
    pub values: Vec<f64>,
    pub vectors: RealMatrix,
    left: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// One-sided Jacobi SVD. Returns singular values ascending; ties keep the
/// column order of the sweep.
pub fn right_singular(t: &RealMatrix) -> Result<RightSingular> {
    if !t.is_square() {
        return Err(Error::DimensionMismatch {
            expected: t.rows(),
            got: t.cols(),
        });
    }
    let n = t.rows();
    // column-major working copies
    let mut a: Vec<Vec<f64>> = (0..n).map(|j| t.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&a[p], &a[p]);
                let beta = dot(&a[q], &a[q]);
                let gamma = dot(&a[p], &a[q]);
                if gamma == 0.0 || gamma.abs() <= ORTHO_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let tt = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + tt * tt).sqrt();
                let s = c * tt;
                for cols in [&mut a, &mut v] {
                    for i in 0..n {
                        let xp = cols[p][i];
                        let xq = cols[q][i];
                        cols[p][i] = c * xp - s * xq;
                        cols[q][i] = s * xp + c * xq;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
    }

    let sigma: Vec<f64> = a.iter().map(|col| norm(col)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[i].total_cmp(&sigma[j]));
    Ok(RightSingular {
        values: order.iter().map(|&i| sigma[i]).collect(),
        vectors: RealMatrix::from_fn(n, n, |i, j| v[order[j]][i]),
        left: order.iter().map(|&i| a[i].clone()).collect(),
    })
}

/// Singular values of a square matrix, ascending.
pub fn singular_values(t: &RealMatrix) -> Result<Vec<f64>> {
    right_singular(t).map(|s| s.values)
}

/// Polar factors `(R, S)` with `R` orthogonal and `S` symmetric PSD.
pub fn polar_decompose(t: &RealMatrix) -> Result<(RealMatrix, RealMatrix)> {
    let svd = right_singular(t)?;
    let n = t.rows();
    let cutoff = RANK_TOL * t.frobenius_norm();

    // Left vectors, largest singular value first, then the kernel completion.
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut slots: Vec<Option<usize>> = vec![None; n];
    for k in (0..n).rev() {
        if svd.values[k] > cutoff && svd.values[k] > 0.0 {
            if let Some(u) = orthonormalize(&svd.left[k], &basis) {
                slots[k] = Some(basis.len());
                basis.push(u);
            }
        }
    }
    let mut e = 0;
    for slot in slots.iter_mut().rev() {
        if slot.is_some() {
            continue;
        }
        while e < n {
            let probe: Vec<f64> = (0..n).map(|i| if i == e { 1.0 } else { 0.0 }).collect();
            e += 1;
            if let Some(u) = orthonormalize(&probe, &basis) {
                *slot = Some(basis.len());
                basis.push(u);
                break;
            }
        }
        assert!(slot.is_some(), "kernel completion ran out of probes");
    }

    let vecs = &svd.vectors;
    let s = RealMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| vecs[(i, k)] * svd.values[k] * vecs[(j, k)])
            .sum()
    });
    let r = RealMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| basis[slots[k].expect("slot filled")][i] * vecs[(j, k)])
            .sum()
    });
    Ok((r, s))
}

/// Two passes of modified Gram-Schmidt against `basis`; `None` when the
/// remainder is numerically dependent.
fn orthonormalize(x: &[f64], basis: &[Vec<f64>]) -> Option<Vec<f64>> {
    let scale = norm(x);
    if scale == 0.0 {
        return None;
    }
    let mut u: Vec<f64> = x.iter().map(|v| v / scale).collect();
    for _ in 0..2 {
        for b in basis {
            let proj = dot(&u, b);
            for (ui, bi) in u.iter_mut().zip(b) {
                *ui -= proj * bi;
            }
        }
    }
    let rest = norm(&u);
    if rest < 1e-8 {
        return None;
    }
    u.iter_mut().for_each(|v| *v /= rest);
    Some(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: &RealMatrix, b: &RealMatrix, tol: f64) {
        let r = (a - b).frobenius_norm();
        assert!(r <= tol, "residual {r:e}");
    }

    #[test]
    fn identity_is_fixed() {
        let i8 = RealMatrix::identity(8);
        let (r, s) = polar_decompose(&i8).unwrap();
        assert_close(&r, &i8, 1e-15);
        assert_close(&s, &i8, 1e-15);
    }

    #[test]
    fn reflection_goes_to_r() {
        let mut d = vec![1.0; 8];
        d[0] = -1.0;
        let t = RealMatrix::from_diagonal(&d);
        let (r, s) = polar_decompose(&t).unwrap();
        assert_close(&r, &t, 1e-14);
        assert_close(&s, &RealMatrix::identity(8), 1e-14);
    }

    #[test]
    fn scaled_rotation() {
        // S = (T^T T)^{1/2} = 2 I, R = the rotation
        let (c, s) = (
            std::f64::consts::FRAC_PI_4.cos(),
            std::f64::consts::FRAC_PI_4.sin(),
        );
        let mut rot = RealMatrix::identity(8);
        rot[(0, 0)] = c;
        rot[(0, 1)] = -s;
        rot[(1, 0)] = s;
        rot[(1, 1)] = c;
        let t = RealMatrix::from_fn(8, 8, |i, j| 2.0 * rot[(i, j)]);
        let (r, sm) = polar_decompose(&t).unwrap();
        assert_close(&sm, &RealMatrix::from_diagonal(&[2.0; 8]), 1e-14);
        assert_close(&r, &rot, 1e-14);
    }

    #[test]
    fn zero_matrix() {
        let t = RealMatrix::zeros(4, 4);
        let (r, s) = polar_decompose(&t).unwrap();
        assert!(r.orthogonality_residual() < 1e-15);
        assert_close(&s, &t, 0.0);
    }

    #[test]
    fn rank_one() {
        let t = RealMatrix::from_fn(3, 3, |i, j| ((i + 1) * (j + 2)) as f64);
        let (r, s) = polar_decompose(&t).unwrap();
        assert!(r.orthogonality_residual() < 1e-12);
        assert!((&r.matmul(&s) - &t).frobenius_norm() < 1e-12 * t.frobenius_norm());
        assert!(s.asymmetry() < 1e-12);
    }
}

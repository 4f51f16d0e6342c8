//! Operators as Bloch coefficient vectors and unital Hermiticity-preserving
//! maps as real Bloch matrices.
//!
//! An operator is written `X = w0 λ_0 + Σ_k w_k λ_k` with `w_k = Tr(λ_k X)/2`,
//! and a unital map acts as `w0 ↦ w0`, `w ↦ T w`. Conjugating the map by
//! unitaries on either side sends `T ↦ O_1 T O_2`, where `O_i` is the adjoint
//! action of `U_i` on the generators.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gellmann::GellMannBasis;
use crate::numerics::{polar_decompose, ComplexMatrix, RealMatrix};

/// Tolerance for the unital / Hermiticity-preserving / traceless checks.
pub const INGEST_TOL: f64 = 1e-10;

/// Bloch coefficients of an operator. `w0` is complex in general (it is
/// `Tr X / sqrt(2d)`), and real for Hermitian `X`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlochVector {
    #[serde(serialize_with = "crate::serialize_complex")]
    pub w0: Complex64,
    #[serde(serialize_with = "crate::serialize_complex_vec")]
    pub w: Vec<Complex64>,
}

impl BlochVector {
    pub fn is_real(&self, tol: f64) -> bool {
        self.w0.im.abs() <= tol && self.w.iter().all(|z| z.im.abs() <= tol)
    }

    /// `Σ_k |w_k|^2`.
    pub fn traceless_norm_sqr(&self) -> f64 {
        self.w.iter().map(|z| z.norm_sqr()).sum()
    }
}

pub fn decompose(x: &ComplexMatrix, basis: &GellMannBasis) -> Result<BlochVector> {
    if x.dim() != basis.d() {
        return Err(Error::DimensionMismatch {
            expected: basis.d(),
            got: x.dim(),
        });
    }
    Ok(BlochVector {
        w0: basis.lambda0().trace_product(x) * 0.5,
        w: basis
            .lambdas()
            .iter()
            .map(|l| l.trace_product(x) * 0.5)
            .collect(),
    })
}

pub fn reconstruct(v: &BlochVector, basis: &GellMannBasis) -> Result<ComplexMatrix> {
    if v.w.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            got: v.w.len(),
        });
    }
    let mut x = basis.lambda0().scale(v.w0);
    for (c, l) in v.w.iter().zip(basis.lambdas()) {
        x.axpy(*c, l);
    }
    Ok(x)
}

/// Real `(d^2-1) x (d^2-1)` Bloch matrix of a unital Hermiticity-preserving
/// map.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlochMap {
    pub d: usize,
    #[serde(serialize_with = "serialize_rows")]
    pub t: RealMatrix,
}

fn serialize_rows<S: serde::Serializer>(
    m: &RealMatrix,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    m.to_rows().serialize(s)
}

impl BlochMap {
    pub fn new(d: usize, t: RealMatrix) -> Result<Self> {
        let n = d * d - 1;
        if t.rows() != n || t.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: if t.rows() != n { t.rows() } else { t.cols() },
            });
        }
        if !t.is_finite() {
            return Err(Error::InvalidParameter(
                "Bloch matrix has non-finite entries".into(),
            ));
        }
        Ok(Self { d, t })
    }

    pub fn diagonal(d: usize, mu: &[f64]) -> Result<Self> {
        Self::new(d, RealMatrix::from_diagonal(mu))
    }

    pub fn identity(d: usize) -> Self {
        Self {
            d,
            t: RealMatrix::identity(d * d - 1),
        }
    }

    /// `Some(mu)` if `T` is diagonal up to `tol` in Frobenius norm.
    pub fn diagonal_entries(&self, tol: f64) -> Option<Vec<f64>> {
        (self.t.off_diagonal_norm() <= tol).then(|| self.t.diagonal())
    }
}

/// Bloch matrix `T_kl = Tr(λ_k Φ(λ_l)) / 2` of a linear map given by its
/// action, after checking `Φ(I) = I`, Hermiticity preservation and that
/// traceless generators map to traceless operators.
pub fn bloch_matrix_of_map<F>(action: F, basis: &GellMannBasis) -> Result<BlochMap>
where
    F: Fn(&ComplexMatrix) -> ComplexMatrix,
{
    let d = basis.d();
    let id = ComplexMatrix::identity(d);
    let phi_id = action(&id);
    if phi_id.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: phi_id.dim(),
        });
    }
    let residual = (&phi_id - &id).frobenius_norm();
    if !(residual <= INGEST_TOL) {
        return Err(Error::NotUnital { residual });
    }

    let n = basis.len();
    let mut t = RealMatrix::zeros(n, n);
    for (l, lam) in basis.lambdas().iter().enumerate() {
        let image = action(lam);
        let scale = image.frobenius_norm().max(1.0);
        let residual = image.hermiticity_residual();
        if !(residual <= INGEST_TOL * scale) {
            return Err(Error::NotHermiticityPreserving { residual });
        }
        let tr = image.trace().norm();
        if !(tr <= INGEST_TOL * scale) {
            return Err(Error::NotTracePreserving { residual: tr });
        }
        for (k, lk) in basis.lambdas().iter().enumerate() {
            let entry = lk.trace_product(&image) * 0.5;
            if !(entry.im.abs() <= INGEST_TOL * scale) {
                return Err(Error::NotHermiticityPreserving {
                    residual: entry.im.abs(),
                });
            }
            t[(k, l)] = entry.re;
        }
    }
    BlochMap::new(d, t)
}

/// `w0` passes through, `w ↦ T w`.
pub fn apply_map(m: &BlochMap, v: &BlochVector) -> Result<BlochVector> {
    if v.w.len() != m.t.cols() {
        return Err(Error::DimensionMismatch {
            expected: m.t.cols(),
            got: v.w.len(),
        });
    }
    Ok(BlochVector {
        w0: v.w0,
        w: m.t.mul_complex_vec(&v.w),
    })
}

/// `O_jk = Tr(λ_j U λ_k U^dag) / 2`.
pub fn adjoint_orthogonal(u: &ComplexMatrix, basis: &GellMannBasis) -> Result<RealMatrix> {
    if u.dim() != basis.d() {
        return Err(Error::DimensionMismatch {
            expected: basis.d(),
            got: u.dim(),
        });
    }
    let residual = u.unitarity_residual();
    if !(residual <= INGEST_TOL) {
        return Err(Error::NotUnitary { residual });
    }
    let ud = u.adjoint();
    let n = basis.len();
    let mut o = RealMatrix::zeros(n, n);
    for (k, lk) in basis.lambdas().iter().enumerate() {
        let rotated = u.matmul(lk).matmul(&ud);
        for (j, lj) in basis.lambdas().iter().enumerate() {
            o[(j, k)] = (lj.trace_product(&rotated) * 0.5).re;
        }
    }
    Ok(o)
}

/// `T = R S` with `S = V diag(mu) V^T`, `mu` ascending.
#[derive(Debug, Clone, Serialize)]
pub struct CanonicalForm {
    #[serde(rename = "R", serialize_with = "serialize_rows")]
    pub r: RealMatrix,
    #[serde(rename = "S", serialize_with = "serialize_rows")]
    pub s: RealMatrix,
    pub mu: Vec<f64>,
    #[serde(serialize_with = "serialize_rows")]
    pub basis_change: RealMatrix,
}

pub fn canonical_form(m: &BlochMap) -> Result<CanonicalForm> {
    let (r, s) = polar_decompose(&m.t)?;
    // the singular values of T are the spectrum of S
    let svd = crate::numerics::right_singular(&m.t)?;
    Ok(CanonicalForm {
        r,
        s,
        mu: svd.values,
        basis_change: svd.vectors,
    })
}

//! Bloch-coefficient expansion of the Kadison-Schwarz difference for a map
//! with diagonal Bloch matrix `diag(mu)`.
//!
//! Only the traceless part of `X` matters. With `Y = Σ w_k λ_k`,
//!
//! ```text
//! Δ(X) = α I + Σ_k β_k λ_k
//! α    = (2/d) Σ_i (1 - μ_i^2) |w_i|^2
//! β_k  = Σ_ij conj(w_i) w_j (μ_k - μ_i μ_j) (d_ijk + i f_ijk)
//! ```
//!
//! `β_k` is split into the symmetric-constant part and the antisymmetric
//! part. The latter equals `-2 Σ_{i<j} f_ijk (μ_k - μ_i μ_j) Im(conj(w_i) w_j)`,
//! which vanishes for Hermitian `X` but not for general complex `w`.

use num_complex::Complex64;
use serde::Serialize;

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::gellmann::{GellMannBasis, StructureConstants};
use crate::numerics::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KSExpansion {
    pub alpha: f64,
    pub beta: Vec<f64>,
    /// Contribution of the `d_ijk` terms to `beta`.
    pub beta_d: Vec<f64>,
    /// Contribution of the `f_ijk` terms to `beta`.
    pub beta_f: Vec<f64>,
    /// Largest imaginary part discarded from the `beta` sums.
    pub max_imag: f64,
}

impl KSExpansion {
    /// `α I + Σ_k β_k λ_k`.
    pub fn to_matrix(&self, basis: &GellMannBasis) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(basis.d()).scale_real(self.alpha);
        for (b, l) in self.beta.iter().zip(basis.lambdas()) {
            m.axpy(Complex64::new(*b, 0.0), l);
        }
        m
    }

    /// Euclidean norm of the antisymmetric-constant contribution.
    pub fn f_part_norm(&self) -> f64 {
        self.beta_f.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

pub fn ks_expansion(mu: &[f64], v: &BlochVector, sc: &StructureConstants) -> Result<KSExpansion> {
    let n = sc.len();
    for len in [mu.len(), v.w.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: len,
            });
        }
    }
    let w = &v.w;
    let alpha = (2.0 / sc.dim() as f64)
        * mu.iter()
            .zip(w)
            .map(|(m, z)| (1.0 - m * m) * z.norm_sqr())
            .sum::<f64>();

    let mut beta_d = vec![0.0; n];
    let mut beta_f = vec![0.0; n];
    let mut max_imag: f64 = 0.0;
    for k in 0..n {
        let mut sum_d = Complex64::new(0.0, 0.0);
        let mut sum_f = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                let (dijk, fijk) = (sc.d(i, j, k), sc.f(i, j, k));
                if dijk == 0.0 && fijk == 0.0 {
                    continue;
                }
                let weight = w[i].conj() * w[j] * (mu[k] - mu[i] * mu[j]);
                sum_d += weight * dijk;
                sum_f += weight * Complex64::new(0.0, fijk);
            }
        }
        max_imag = max_imag.max(sum_d.im.abs()).max(sum_f.im.abs());
        beta_d[k] = sum_d.re;
        beta_f[k] = sum_f.re;
    }
    let beta = beta_d.iter().zip(&beta_f).map(|(a, b)| a + b).collect();
    Ok(KSExpansion {
        alpha,
        beta,
        beta_d,
        beta_f,
        max_imag,
    })
}

//! Generalized Gell-Mann basis of `su(d)` and its structure constants.
//!
//! Generators are normalized to `Tr(λ_i λ_j) = 2 δ_ij` and ordered block by
//! block: for each new level `k = 1..d-1`, the symmetric and antisymmetric
//! off-diagonal pairs `(j, k)` for `j < k`, followed by the `k`-th diagonal
//! generator. For `d = 3` this is the standard ordering `λ_1 .. λ_8`.
//!
//! Indices are zero-based throughout the Rust API: `lambdas()[0]` is `λ_1`.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

#[derive(Debug, Clone)]
pub struct GellMannBasis {
    d: usize,
    lambdas: Vec<ComplexMatrix>,
    lambda0: ComplexMatrix,
}

/// Dense symmetric (`d_ijk`) and antisymmetric (`f_ijk`) structure constants,
/// each of size `n^3` with `n = d^2 - 1`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    dim: usize,
    n: usize,
    d_tensor: Vec<f64>,
    f_tensor: Vec<f64>,
}

/// Coefficients of `λ_i λ_j = scalar · I + Σ_k coeffs[k] λ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductExpansion {
    pub scalar: f64,
    pub coeffs: Vec<Complex64>,
}

impl GellMannBasis {
    /// Generalized Gell-Mann matrices for `M_d`.
    pub fn generators(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        let i = Complex64::i();
        let mut lambdas = Vec::with_capacity(d * d - 1);
        for k in 1..d {
            for j in 0..k {
                let mut sym = ComplexMatrix::zeros(d);
                sym[(j, k)] = Complex64::new(1.0, 0.0);
                sym[(k, j)] = Complex64::new(1.0, 0.0);
                lambdas.push(sym);

                let mut anti = ComplexMatrix::zeros(d);
                anti[(j, k)] = -i;
                anti[(k, j)] = i;
                lambdas.push(anti);
            }
            let norm = (2.0 / (k * (k + 1)) as f64).sqrt();
            let mut diag = vec![0.0; d];
            diag[..k].iter_mut().for_each(|x| *x = norm);
            diag[k] = -(k as f64) * norm;
            lambdas.push(ComplexMatrix::from_real_diagonal(&diag));
        }
        let lambda0 = ComplexMatrix::identity(d).scale_real((2.0 / d as f64).sqrt());
        Ok(Self {
            d,
            lambdas,
            lambda0,
        })
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of traceless generators, `d^2 - 1`.
    #[inline]
    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    #[inline]
    pub fn lambdas(&self) -> &[ComplexMatrix] {
        &self.lambdas
    }

    #[inline]
    pub fn lambda(&self, k: usize) -> &ComplexMatrix {
        &self.lambdas[k]
    }

    /// `λ_0 = sqrt(2/d) I`.
    #[inline]
    pub fn lambda0(&self) -> &ComplexMatrix {
        &self.lambda0
    }

    /// Largest deviation of the Gram matrix `Tr(λ_i λ_j)` from `2 δ_ij`.
    pub fn gram_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, la) in self.lambdas.iter().enumerate() {
            for (b, lb) in self.lambdas.iter().enumerate() {
                let want = if a == b { 2.0 } else { 0.0 };
                worst = worst.max((la.trace_product(lb) - want).norm());
            }
        }
        worst
    }
}

/// The `su(3)` basis, built once.
pub fn su3() -> &'static GellMannBasis {
    static BASIS: OnceLock<GellMannBasis> = OnceLock::new();
    BASIS.get_or_init(|| GellMannBasis::generators(3).expect("d = 3 is valid"))
}

/// Structure constants of `su(3)`, built once.
pub fn su3_constants() -> &'static StructureConstants {
    static SC: OnceLock<StructureConstants> = OnceLock::new();
    SC.get_or_init(|| structure_constants(su3()))
}

/// `d_ijk = Tr({λ_i, λ_j} λ_k) / 4` and `f_ijk = Tr([λ_i, λ_j] λ_k) / 4i`.
pub fn structure_constants(basis: &GellMannBasis) -> StructureConstants {
    let n = basis.len();
    let mut d_tensor = vec![0.0; n * n * n];
    let mut f_tensor = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let ij = basis.lambda(i).matmul(basis.lambda(j));
            let ji = basis.lambda(j).matmul(basis.lambda(i));
            let anti = &ij + &ji;
            let comm = &ij - &ji;
            for k in 0..n {
                let idx = (i * n + j) * n + k;
                d_tensor[idx] = anti.trace_product(basis.lambda(k)).re / 4.0;
                f_tensor[idx] = (comm.trace_product(basis.lambda(k)) / Complex64::new(0.0, 4.0)).re;
            }
        }
    }
    StructureConstants {
        dim: basis.d(),
        n,
        d_tensor,
        f_tensor,
    }
}

impl StructureConstants {
    /// Underlying matrix dimension `d`.
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators, `d^2 - 1`.
    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize, k: usize) -> f64 {
        self.d_tensor[(i * self.n + j) * self.n + k]
    }

    #[inline]
    pub fn f(&self, i: usize, j: usize, k: usize) -> f64 {
        self.f_tensor[(i * self.n + j) * self.n + k]
    }

    /// A copy with every `d_ijk` multiplied by `factor`.
    pub fn with_scaled_d(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.d_tensor.iter_mut().for_each(|x| *x *= factor);
        out
    }

    /// The symmetric slice `(D_k)_ij = d_ijk`.
    pub fn d_slice(&self, k: usize) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.d(i, j, k)).collect())
            .collect()
    }

    /// Nonzero `d_ijk` with `i <= j <= k`, zero-based.
    pub fn d_nonzero(&self, tol: f64) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                for k in j..self.n {
                    let v = self.d(i, j, k);
                    if v.abs() > tol {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    /// Nonzero `f_ijk` with `i < j < k`, zero-based.
    pub fn f_nonzero(&self, tol: f64) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    let v = self.f(i, j, k);
                    if v.abs() > tol {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    /// Expansion of `λ_i λ_j` in the basis (zero-based `i`, `j`).
    pub fn product_expand(&self, i: usize, j: usize) -> Result<ProductExpansion> {
        for index in [i, j] {
            if index >= self.n {
                return Err(Error::IndexOutOfRange {
                    index,
                    max: self.n.saturating_sub(1),
                });
            }
        }
        let scalar = if i == j { 2.0 / self.dim as f64 } else { 0.0 };
        let coeffs = (0..self.n)
            .map(|k| Complex64::new(self.d(i, j, k), self.f(i, j, k)))
            .collect();
        Ok(ProductExpansion { scalar, coeffs })
    }
}

impl ProductExpansion {
    pub fn to_matrix(&self, basis: &GellMannBasis) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(basis.d()).scale_real(self.scalar);
        for (c, l) in self.coeffs.iter().zip(basis.lambdas()) {
            m.axpy(*c, l);
        }
        m
    }
}

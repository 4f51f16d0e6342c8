//! Dense linear algebra for the small matrices used throughout the crate
//! (at most 9x9): Hermitian eigendecomposition, real polar decomposition and
//! PSD tests.

mod eigen;
mod matrix;
mod polar;

pub use eigen::{
    eig_hermitian, eig_symmetric, eigvals_hermitian, is_psd, min_eigenvalue, EigenResult,
    HERMITIAN_TOL, MAX_SWEEPS, OFF_DIAGONAL_TOL,
};
pub use matrix::{ComplexMatrix, RealMatrix};
pub use polar::{polar_decompose, right_singular, singular_values, RightSingular};

/// Hermitian `H^{-1/2}` for a positive definite `H`; `None` if any eigenvalue
/// is below `floor`.
pub fn inverse_sqrt(h: &ComplexMatrix, floor: f64) -> crate::Result<Option<ComplexMatrix>> {
    let e = eig_hermitian(h)?;
    if e.min() < floor {
        return Ok(None);
    }
    let u = &e.eigenvectors;
    let n = h.dim();
    Ok(Some(ComplexMatrix::from_fn(n, |i, j| {
        (0..n)
            .map(|k| u[(i, k)] * u[(j, k)].conj() / e.eigenvalues[k].sqrt())
            .sum()
    })))
}

use crate::error::{Error, Result};
use crate::map::UnitalMap;
use crate::numerics::{min_eigenvalue, ComplexMatrix};

/// `C = Σ_ij E_ij ⊗ Φ(E_ij)` (unnormalized), 9x9.
pub fn choi_matrix(map: &UnitalMap) -> ComplexMatrix {
    let images = map.unit_images();
    ComplexMatrix::from_fn(9, |r, c| {
        let (i, a) = (r / 3, r % 3);
        let (j, b) = (c / 3, c % 3);
        images[3 * i + j][(a, b)]
    })
}

/// Choi test: `(min eigenvalue >= -tol, min eigenvalue)`.
pub fn is_cp(map: &UnitalMap, tol: f64) -> Result<(bool, f64)> {
    let choi = choi_matrix(map);
    let residual = choi.hermiticity_residual();
    if !(residual <= 1e-10 * choi.frobenius_norm().max(1.0)) {
        return Err(Error::NonHermitianChoi { residual });
    }
    let min = min_eigenvalue(&choi.hermitian_part())?;
    Ok((min >= -tol, min))
}

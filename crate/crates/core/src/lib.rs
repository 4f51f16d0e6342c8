//! Unital linear maps on `M_3` in the Bloch / Gell-Mann picture.
//!
//! The crate places a map in the hierarchy CP ⊂ KS ⊂ Pos:
//!
//! - [`numerics`]: Jacobi eigensolver, polar decomposition, PSD tests.
//! - [`gellmann`]: generalized Gell-Mann basis and structure constants.
//! - [`bloch`]: Bloch vectors, Bloch matrices, unitary covariance and the
//!   polar canonical form.
//! - [`map`]: ingestion of maps from Bloch matrices, Kraus operators, Choi
//!   matrices or a matrix action, plus the named catalog.
//! - [`ks`]: the Kadison-Schwarz difference, its Bloch expansion, the
//!   analytic certifier for diagonal maps and the numerical falsifier.
//! - [`classify`]: Choi-based CP test, positivity falsifier, full
//!   classification and random map families.
//!
//! ```
//! use ks3_core::{classify, map::catalog, Budgets};
//!
//! let c = classify(&catalog::transposition(), Budgets::uniform(50), 0, 1e-9, 0).unwrap();
//! assert!(!c.cp.is_cp());
//! assert!(c.ks.is_violated());
//! ```

// `!(x <= tol)` is deliberate: NaN residuals must fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bloch;
pub mod classify;
pub mod error;
pub mod gellmann;
pub mod ks;
pub mod map;
pub mod numerics;
pub mod optimize;
pub mod random;

pub use bloch::{
    adjoint_orthogonal, apply_map, bloch_matrix_of_map, canonical_form, decompose, reconstruct,
    BlochMap, BlochVector, CanonicalForm,
};
pub use classify::{
    choi_matrix, classify, is_cp, positivity_search, sample_random_map, Budgets, MapClassification,
    RandomMapKind,
};
pub use error::{Error, Result};
pub use gellmann::{structure_constants, su3, su3_constants, GellMannBasis, StructureConstants};
pub use ks::{
    c3_constant, certify_ks, kadison_contraction_check, ks_difference, ks_expansion,
    normal_operator_audit, search_violation, KSCertificate, KSExpansion, KSWitness,
};
pub use map::UnitalMap;
pub use num_complex::Complex64;
pub use numerics::{
    eig_hermitian, is_psd, polar_decompose, ComplexMatrix, EigenResult, RealMatrix,
};
pub use optimize::SearchOptions;

pub(crate) fn serialize_complex<S: serde::Serializer>(
    z: &Complex64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&[z.re, z.im], s)
}

/// Complex values as `[re, im]` pairs.
pub(crate) fn serialize_complex_vec<S: serde::Serializer>(
    v: &[Complex64],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

/// Rows of `[re, im]` pairs.
pub(crate) fn serialize_complex_matrix<S: serde::Serializer>(
    m: &ComplexMatrix,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let n = m.dim();
    let mut seq = s.serialize_seq(Some(n))?;
    for i in 0..n {
        let row: Vec<[f64; 2]> = (0..n).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

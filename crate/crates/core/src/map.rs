//! Unital Hermiticity-preserving maps on `M_3`, ingested from any of the
//! supported descriptions and normalized to a Bloch matrix plus an action.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::bloch::{apply_map, bloch_matrix_of_map, decompose, reconstruct, BlochMap, INGEST_TOL};
use crate::error::{Error, Result};
use crate::gellmann::su3;
use crate::numerics::{ComplexMatrix, RealMatrix};

type Action = Arc<dyn Fn(&ComplexMatrix) -> ComplexMatrix + Send + Sync>;

/// How a map was described when it was ingested.
#[derive(Debug, Clone, PartialEq)]
pub enum MapSource {
    Bloch,
    BlochDiagonal(Vec<f64>),
    Kraus(Vec<ComplexMatrix>),
    Choi(ComplexMatrix),
    Named(String),
}

/// A validated unital, Hermiticity-preserving, traceless-preserving map on
/// `M_3`.
#[derive(Clone)]
pub struct UnitalMap {
    label: String,
    bloch: BlochMap,
    source: MapSource,
    action: Action,
}

impl fmt::Debug for UnitalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UnitalMap")
            .field("label", &self.label)
            .field("bloch", &self.bloch)
            .finish_non_exhaustive()
    }
}

impl UnitalMap {
    /// Ingest a map from its matrix action.
    pub fn from_action<F>(label: impl Into<String>, action: F) -> Result<Self>
    where
        F: Fn(&ComplexMatrix) -> ComplexMatrix + Send + Sync + 'static,
    {
        let label = label.into();
        let bloch = bloch_matrix_of_map(&action, su3())?;
        Ok(Self {
            source: MapSource::Named(label.clone()),
            label,
            bloch,
            action: Arc::new(action),
        })
    }

    /// Ingest an 8x8 Bloch matrix; the action is `w ↦ T w`.
    pub fn from_bloch(t: RealMatrix) -> Result<Self> {
        let bloch = BlochMap::new(3, t)?;
        Ok(Self::bloch_backed("bloch", MapSource::Bloch, bloch))
    }

    pub fn from_diagonal(mu: &[f64]) -> Result<Self> {
        if mu.len() != 8 {
            return Err(Error::DimensionMismatch {
                expected: 8,
                got: mu.len(),
            });
        }
        let bloch = BlochMap::diagonal(3, mu)?;
        Ok(Self::bloch_backed(
            "bloch_diagonal",
            MapSource::BlochDiagonal(mu.to_vec()),
            bloch,
        ))
    }

    fn bloch_backed(label: &str, source: MapSource, bloch: BlochMap) -> Self {
        let m = bloch.clone();
        let action: Action = Arc::new(move |x: &ComplexMatrix| {
            let b = su3();
            let v = decompose(x, b).expect("3x3 input");
            reconstruct(&apply_map(&m, &v).expect("8-vector"), b).expect("8-vector")
        });
        Self {
            label: label.to_string(),
            bloch,
            source,
            action,
        }
    }

    /// `X ↦ Σ K X K^dag`.
    pub fn from_kraus(ops: Vec<ComplexMatrix>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidParameter("Kraus list is empty".into()));
        }
        if let Some(bad) = ops.iter().find(|k| k.dim() != 3) {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: bad.dim(),
            });
        }
        let adj: Vec<ComplexMatrix> = ops.iter().map(ComplexMatrix::adjoint).collect();
        let pairs: Vec<(ComplexMatrix, ComplexMatrix)> = ops.iter().cloned().zip(adj).collect();
        let action = move |x: &ComplexMatrix| {
            let mut out = ComplexMatrix::zeros(3);
            for (k, kd) in &pairs {
                out = &out + &k.matmul(x).matmul(kd);
            }
            out
        };
        let bloch = bloch_matrix_of_map(&action, su3())?;
        Ok(Self {
            label: "kraus".into(),
            bloch,
            source: MapSource::Kraus(ops),
            action: Arc::new(action),
        })
    }

    /// Ingest a 9x9 Choi matrix `C = Σ E_ij ⊗ Φ(E_ij)`, so that
    /// `Φ(X) = Σ_ij X_ij C[i-block, j-block]`.
    pub fn from_choi(choi: ComplexMatrix) -> Result<Self> {
        if choi.dim() != 9 {
            return Err(Error::DimensionMismatch {
                expected: 9,
                got: choi.dim(),
            });
        }
        let residual = choi.hermiticity_residual();
        if !(residual <= INGEST_TOL * choi.frobenius_norm().max(1.0)) {
            return Err(Error::NonHermitianChoi { residual });
        }
        let blocks = choi_blocks(&choi);
        let action = move |x: &ComplexMatrix| combine_blocks(&blocks, x);
        let bloch = bloch_matrix_of_map(&action, su3())?;
        Ok(Self {
            label: "choi".into(),
            bloch,
            source: MapSource::Choi(choi),
            action: Arc::new(action),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn bloch(&self) -> &BlochMap {
        &self.bloch
    }

    #[inline]
    pub fn source(&self) -> &MapSource {
        &self.source
    }

    /// `Φ(X)`.
    #[inline]
    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        (self.action)(x)
    }

    /// Images of the nine matrix units, `Φ(E_ij)` at index `3i + j`.
    pub fn unit_images(&self) -> [ComplexMatrix; 9] {
        std::array::from_fn(|a| self.apply(&ComplexMatrix::unit(3, a / 3, a % 3)))
    }

    /// `U_1 Φ(U_2 X U_2^dag) U_1^dag`.
    pub fn conjugated(&self, u1: &ComplexMatrix, u2: &ComplexMatrix) -> Result<Self> {
        for u in [u1, u2] {
            let residual = u.unitarity_residual();
            if !(residual <= INGEST_TOL) {
                return Err(Error::NotUnitary { residual });
            }
        }
        let inner = self.action.clone();
        let (u1, u1d) = (u1.clone(), u1.adjoint());
        let (u2, u2d) = (u2.clone(), u2.adjoint());
        let label = format!("conjugated({})", self.label);
        Self::from_action(label, move |x: &ComplexMatrix| {
            let y = inner(&u2.matmul(x).matmul(&u2d));
            u1.matmul(&y).matmul(&u1d)
        })
    }
}

pub(crate) fn choi_blocks(choi: &ComplexMatrix) -> [ComplexMatrix; 9] {
    std::array::from_fn(|a| {
        let (i, j) = (a / 3, a % 3);
        ComplexMatrix::from_fn(3, |r, c| choi[(3 * i + r, 3 * j + c)])
    })
}

/// `Σ_ij X_ij M_ij` for unit images `M`.
pub(crate) fn combine_blocks(images: &[ComplexMatrix; 9], x: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(3);
    for (a, m) in images.iter().enumerate() {
        let coeff = x[(a / 3, a % 3)];
        if coeff != Complex64::new(0.0, 0.0) {
            out.axpy(coeff, m);
        }
    }
    out
}

/// Named maps used throughout tests, docs and the CLI.
pub mod catalog {
    use super::*;

    pub const NAMES: &[&str] = &[
        "identity",
        "transposition",
        "depolarizing(p)",
        "completely_depolarizing",
        "unitary_conjugation(U)",
    ];

    pub fn identity() -> UnitalMap {
        UnitalMap::from_action("identity", |x: &ComplexMatrix| x.clone())
            .expect("identity is valid")
    }

    pub fn transposition() -> UnitalMap {
        UnitalMap::from_action("transposition", ComplexMatrix::transpose)
            .expect("transposition is valid")
    }

    /// `X ↦ p X + (1 - p) Tr(X) I / 3`.
    pub fn depolarizing(p: f64) -> Result<UnitalMap> {
        if !p.is_finite() {
            return Err(Error::InvalidParameter(format!("depolarizing p = {p}")));
        }
        UnitalMap::from_action(format!("depolarizing({p})"), move |x: &ComplexMatrix| {
            let mut y = x.scale_real(p);
            y.axpy(x.trace() * ((1.0 - p) / 3.0), &ComplexMatrix::identity(3));
            y
        })
    }

    pub fn completely_depolarizing() -> UnitalMap {
        depolarizing(0.0)
            .expect("p = 0 is valid")
            .with_label("completely_depolarizing")
    }

    /// `X ↦ U X U^dag`.
    pub fn unitary_conjugation(u: &ComplexMatrix) -> Result<UnitalMap> {
        if u.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: u.dim(),
            });
        }
        let residual = u.unitarity_residual();
        if !(residual <= INGEST_TOL) {
            return Err(Error::NotUnitary { residual });
        }
        let (u, ud) = (u.clone(), u.adjoint());
        UnitalMap::from_action("unitary_conjugation", move |x: &ComplexMatrix| {
            u.matmul(x).matmul(&ud)
        })
    }
}

//! The real N²-dimensional space `Herm(N)` of Hermitian valency-`[1 1; 0 0]`
//! spintensors and the map `L: SL(N,C) -> FL(N²,R)`.
//!
//! Matrix views: an element `X` of `Herm(N)` is the matrix `X[(b, c)] = X^{bċ}`
//! (plain index on rows). A dual element `Eᵅ` is stored as the matrix
//! `Eᵅ[(c, b)] = Eᵅ_{bċ}` (dotted index on rows), so that the full
//! contraction of `Eᵅ ⊗ X` is the plain `trace(Eᵅ X)`.

mod basis;
mod epimorphism;

pub use basis::{dual_basis, standard_herm_basis, HermBasis, BASIS_ID_GELLMANN};
pub use epimorphism::{
    check_homomorphism, epimorphism, image_residual, is_in_kernel, FLMatrix, KERNEL_TOL,
};

use crate::algebra::{check_dim, BasisChange, Spintensor, Valency};
use crate::linalg::{self, CMatrix, C64};
use crate::{Error, Result, TOL};

/// Valency of `Herm(N)` elements: one upper plain and one upper dotted index.
pub const HERM_VALENCY: Valency = Valency::new(1, 1, 0, 0);

/// Valency of the dual elements `Eᵅ`.
pub const DUAL_VALENCY: Valency = Valency::new(0, 0, 1, 1);

/// A Hermitian component matrix `X^{bċ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermVector {
    matrix: CMatrix,
}

impl HermVector {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::domain("Hermitian component matrix must be square"));
        }
        check_dim(matrix.nrows())?;
        if !matrix.iter().all(linalg::is_finite) {
            return Err(Error::domain("Hermitian component matrix must be finite"));
        }
        let scale = matrix.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let defect = linalg::hermitian_defect(&matrix);
        if defect > TOL * scale {
            return Err(Error::domain(format!(
                "matrix violates Hermitian symmetry by {defect:e}"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn to_spintensor(&self) -> Spintensor {
        Spintensor::from_matrix(HERM_VALENCY, &self.matrix).expect("square, n >= 2")
    }

    pub fn from_spintensor(s: &Spintensor) -> Result<Self> {
        if s.valency() != HERM_VALENCY {
            return Err(Error::domain(format!(
                "Herm(N) elements have valency {HERM_VALENCY}, got {}",
                s.valency()
            )));
        }
        Self::new(s.to_matrix()?)
    }

    /// Components in the primed basis, `d X d^H`.
    pub fn transform(&self, change: &BasisChange) -> Result<Self> {
        if change.dim() != self.dim() {
            return Err(Error::domain("dimension mismatch in Hermitian transform"));
        }
        let m = change.d() * &self.matrix * change.d().adjoint();
        Ok(Self { matrix: m })
    }
}

/// `Σ_α coeffs[α] · mats[α]`.
pub(crate) fn real_combination(coeffs: &[f64], mats: &[&CMatrix]) -> CMatrix {
    let n = mats[0].nrows();
    let mut acc = CMatrix::zeros(n, n);
    for (&x, m) in coeffs.iter().zip(mats) {
        if x != 0.0 {
            acc += *m * C64::new(x, 0.0);
        }
    }
    acc
}

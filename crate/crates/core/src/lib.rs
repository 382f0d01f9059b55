//! Finslerian N-spinor algebra.
//!
//! The crate is organised around four layers:
//!
//!   * [`algebra`]: N-spinors, the scalar N-product, unimodular basis changes
//!     and spintensors of arbitrary valency `[k l; m n]`.
//!   * [`herm`]: the real N²-dimensional space `Herm(N)` of Hermitian
//!     spintensors, its standard (identity + generalized Gell-Mann) basis and
//!     dual basis, and the map `L: SL(N,C) -> FL(N²,R)`.
//!   * [`metric`]: the invariant determinant on `Herm(N)`, the symmetric
//!     coefficient tensor `G` of the degree-N length form and its evaluation.
//!   * [`verify`]: seeded property suites that exercise all of the above.
//!
//! For `N = 2` everything reduces to the familiar Weyl spinor picture: the
//! standard basis is the Pauli set, `L` lands in the proper orthochronous
//! Lorentz group and the length form is the Minkowski interval.

pub mod algebra;
mod error;
pub mod herm;
pub mod linalg;
pub mod metric;
pub mod sampling;
pub mod verify;

pub use algebra::{
    levi_civita, scalar_n_product, AxisKind, BasisChange, NSpinor, Spintensor, Valency,
};
pub use error::{Error, Result};
pub use herm::{
    dual_basis, standard_herm_basis, FLMatrix, HermBasis, HermVector, BASIS_ID_GELLMANN,
};
pub use linalg::{CMatrix, C64};
pub use metric::{det_invariant, finsler_power, mixed_determinant, FinslerMetric};

/// Unimodularity tolerance for `|det(c) - 1|`.
pub const TOL_DET: f64 = 1e-9;

/// Default absolute comparison tolerance on unit-scale data.
pub const TOL: f64 = 1e-10;

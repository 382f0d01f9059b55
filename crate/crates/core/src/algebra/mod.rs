//! N-spinors, the scalar N-product, canonical basis changes and the general
//! spintensor engine.
//!
//! Index conventions used throughout the crate:
//!
//!   * A basis change is stored as the matrix `c` whose **columns** are the
//!     new canonical spinors expressed in the old canonical basis, i.e.
//!     `ε'_a = Σ_b c[(b, a)] ε_b`, and `d = c⁻¹`.
//!   * Upper (contravariant) components transform with `d`, upper dotted
//!     components with `conj(d)`, lower components with `cᵀ` and lower dotted
//!     components with `c^H`. This makes every full contraction invariant.
//!   * Applying `b1` and then `b2` equals applying `b1 * b2` (matrix product
//!     `c1 · c2`), since the twice-primed basis is `ε c1 c2`.

mod basis_change;
mod levi_civita;
mod spinor;
mod spintensor;

pub use basis_change::BasisChange;
pub use levi_civita::levi_civita;
pub use spinor::{column_matrix, scalar_n_product, NSpinor};
pub use spintensor::{AxisKind, Spintensor, Valency};

use crate::{Error, Result};

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!(
            "spinor space dimension must be at least 2, got {n}"
        )));
    }
    Ok(())
}

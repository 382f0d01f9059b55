use super::{check_dim, BasisChange};
use crate::linalg::{self, CMatrix, C64, ONE, ZERO};
use crate::{Error, Result};

/// Components `ξᵃ` of an N-spinor relative to a fixed canonical basis.
#[derive(Debug, Clone, PartialEq)]
pub struct NSpinor {
    components: Vec<C64>,
}

impl NSpinor {
    pub fn new(components: Vec<C64>) -> Result<Self> {
        check_dim(components.len())?;
        if !components.iter().all(linalg::is_finite) {
            return Err(Error::domain("spinor components must be finite"));
        }
        Ok(Self { components })
    }

    /// The `a`-th canonical basis spinor (0-based).
    pub fn basis(dim: usize, a: usize) -> Result<Self> {
        check_dim(dim)?;
        if a >= dim {
            return Err(Error::domain(format!("basis index {a} outside 0..{dim}")));
        }
        let mut components = vec![ZERO; dim];
        components[a] = ONE;
        Ok(Self { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    /// Components of the same spinor in the primed basis: `ξ'ᵃ = dᵃ_b ξᵇ`.
    pub fn transform(&self, change: &BasisChange) -> Result<Self> {
        if change.dim() != self.dim() {
            return Err(Error::domain(format!(
                "spinor of dimension {} cannot be transformed by a {}-dimensional change",
                self.dim(),
                change.dim()
            )));
        }
        let d = change.d();
        let components = (0..self.dim())
            .map(|a| {
                (0..self.dim())
                    .map(|b| d[(a, b)] * self.components[b])
                    .sum()
            })
            .collect();
        Ok(Self { components })
    }
}

/// Matrix whose `j`-th column holds the components of `spinors[j]`.
pub fn column_matrix(spinors: &[NSpinor]) -> CMatrix {
    let rows = spinors.first().map_or(0, NSpinor::dim);
    CMatrix::from_fn(rows, spinors.len(), |i, j| spinors[j].components[i])
}

/// The scalar N-product `[ξ, η, …, λ] = ε_{ab…c} ξᵃ ηᵇ ⋯ λᶜ`.
///
/// Evaluated as the signed sum over all permutations (Heap's algorithm,
/// sign flipped on each swap). Debug builds cross-check the result against
/// the determinant of the column matrix.
pub fn scalar_n_product(spinors: &[NSpinor]) -> Result<C64> {
    let n = match spinors.first() {
        Some(s) => s.dim(),
        None => return Err(Error::domain("scalar N-product of an empty list")),
    };
    if spinors.iter().any(|s| s.dim() != n) {
        return Err(Error::domain(
            "scalar N-product of spinors of mixed dimension",
        ));
    }
    if spinors.len() != n {
        return Err(Error::domain(format!(
            "scalar N-product needs exactly {n} spinors, got {}",
            spinors.len()
        )));
    }

    let term = |perm: &[usize]| -> C64 {
        spinors
            .iter()
            .zip(perm)
            .map(|(s, &a)| s.components[a])
            .product()
    };

    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut sign = 1.0;
    let mut acc = term(&perm);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            sign = -sign;
            acc += term(&perm) * sign;
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }

    #[cfg(debug_assertions)]
    {
        let det = linalg::det(&column_matrix(spinors));
        let hadamard: f64 = spinors
            .iter()
            .map(|s| {
                s.components
                    .iter()
                    .map(|z| z.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .product();
        debug_assert!(
            (acc - det).norm() <= 1e-9 * hadamard.max(f64::MIN_POSITIVE),
            "permutation expansion {acc} disagrees with column determinant {det}"
        );
    }

    Ok(acc)
}

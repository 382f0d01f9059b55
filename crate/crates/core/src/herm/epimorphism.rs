use nalgebra::DMatrix;

use super::HermBasis;
use crate::algebra::BasisChange;
use crate::linalg::{self, CMatrix, C64};
use crate::{Error, Result, TOL};

/// `max |L(C) - 1|` below which `C` is reported to lie in the kernel.
pub const KERNEL_TOL: f64 = 1e-9;

/// An element `L(C)` of `FL(N², R)`, dense row-major with `entries[(α, β)] = Lᵅ_β`.
#[derive(Debug, Clone, PartialEq)]
pub struct FLMatrix {
    dim: usize,
    entries: DMatrix<f64>,
    imag_residue: f64,
}

impl FLMatrix {
    pub fn from_entries(dim: usize, entries: DMatrix<f64>) -> Result<Self> {
        let len = dim * dim;
        if entries.nrows() != len || entries.ncols() != len {
            return Err(Error::domain(format!(
                "FL matrix for N = {dim} must be {len}x{len}"
            )));
        }
        Ok(Self {
            dim,
            entries,
            imag_residue: 0.0,
        })
    }

    pub fn identity(dim: usize) -> Self {
        let len = dim * dim;
        Self {
            dim,
            entries: DMatrix::identity(len, len),
            imag_residue: 0.0,
        }
    }

    /// N of the underlying spinor space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, alpha: usize, beta: usize) -> f64 {
        self.entries[(alpha, beta)]
    }

    /// Largest imaginary part discarded when the traces were made real.
    pub fn imag_residue(&self) -> f64 {
        self.imag_residue
    }

    pub fn mul(&self, rhs: &FLMatrix) -> Result<FLMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::domain("product of FL matrices of different N"));
        }
        Ok(Self {
            dim: self.dim,
            entries: &self.entries * &rhs.entries,
            imag_residue: 0.0,
        })
    }

    pub fn try_inverse(&self) -> Result<FLMatrix> {
        let inv = self.entries.clone().try_inverse().ok_or(Error::Singular)?;
        Ok(Self {
            dim: self.dim,
            entries: inv,
            imag_residue: 0.0,
        })
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.entries.ncols() {
            return Err(Error::domain(format!(
                "FL matrix acts on {} components, got {}",
                self.entries.ncols(),
                x.len()
            )));
        }
        Ok((0..self.entries.nrows())
            .map(|a| (0..x.len()).map(|b| self.entries[(a, b)] * x[b]).sum())
            .collect())
    }

    pub fn max_abs_diff(&self, other: &FLMatrix) -> f64 {
        linalg::max_abs_diff_real(&self.entries, &other.entries)
    }

    pub fn identity_deviation(&self) -> f64 {
        self.max_abs_diff(&FLMatrix::identity(self.dim))
    }
}

fn check_dims(change: &BasisChange, basis: &HermBasis) -> Result<()> {
    if change.dim() != basis.dim() {
        return Err(Error::domain(format!(
            "basis change of dimension {} against a Herm basis of dimension {}",
            change.dim(),
            basis.dim()
        )));
    }
    Ok(())
}

/// `Lᵅ_β = trace(Eᵅ C E_β C^H)`.
///
/// The traces are complex in floating point; their imaginary parts are checked
/// against `1e-10` (scaled by the largest entry when that exceeds one) before
/// being dropped.
pub fn epimorphism(change: &BasisChange, basis: &HermBasis) -> Result<FLMatrix> {
    check_dims(change, basis)?;
    let c = change.c();
    let ch = c.adjoint();
    let len = basis.len();
    let images: Vec<CMatrix> = (0..len).map(|b| c * basis.element(b) * &ch).collect();

    let traces: Vec<C64> = (0..len * len)
        .map(|i| basis.pairing(i / len, &images[i % len]))
        .collect();
    let residue = traces.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let scale = traces.iter().map(|z| z.re.abs()).fold(1.0, f64::max);
    if residue > TOL * scale {
        return Err(Error::Convention {
            residue,
            tol: TOL * scale,
        });
    }
    Ok(FLMatrix {
        dim: basis.dim(),
        entries: DMatrix::from_fn(len, len, |a, b| traces[a * len + b].re),
        imag_residue: residue,
    })
}

/// `max_β ‖C E_β C^H - Σ_γ L^γ_β E_γ‖_max`.
pub fn image_residual(change: &BasisChange, basis: &HermBasis, l: &FLMatrix) -> Result<f64> {
    check_dims(change, basis)?;
    let c = change.c();
    let ch = c.adjoint();
    let len = basis.len();
    let mut worst = 0.0_f64;
    for beta in 0..len {
        let lhs = c * basis.element(beta) * &ch;
        let mut rhs = CMatrix::zeros(basis.dim(), basis.dim());
        for gamma in 0..len {
            rhs += basis.element(gamma) * C64::new(l.get(gamma, beta), 0.0);
        }
        worst = worst.max(linalg::max_abs_diff(&lhs, &rhs));
    }
    Ok(worst)
}

/// `max |L(BC) - L(B) L(C)|`.
pub fn check_homomorphism(b: &BasisChange, c: &BasisChange, basis: &HermBasis) -> Result<f64> {
    let bc = (b * c)?;
    let lhs = epimorphism(&bc, basis)?;
    let rhs = epimorphism(b, basis)?.mul(&epimorphism(c, basis)?)?;
    Ok(lhs.max_abs_diff(&rhs))
}

pub fn is_in_kernel(change: &BasisChange, basis: &HermBasis) -> Result<bool> {
    Ok(epimorphism(change, basis)?.identity_deviation() <= KERNEL_TOL)
}

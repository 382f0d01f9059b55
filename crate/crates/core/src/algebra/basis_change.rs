use std::ops::Mul;

use super::check_dim;
use crate::linalg::{self, CMatrix, C64};
use crate::{Error, Result, TOL_DET};

/// A change between two canonical bases, i.e. an element of `SL(N,C)`.
///
/// `c[(b, a)]` is the coefficient of `ε_b` in the new spinor `ε'_a`, so the
/// columns of `c` are the new basis spinors. `d` is the inverse matrix, which
/// satisfies `Σ_a c[(b, a)] d[(a, e)] = δ_be`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisChange {
    c: CMatrix,
    d: CMatrix,
}

/// Below this `|det|` a matrix is reported as singular rather than merely
/// non-unimodular.
const SINGULAR_DET: f64 = 1e-300;

impl BasisChange {
    pub fn new(c: CMatrix) -> Result<Self> {
        if !c.is_square() {
            return Err(Error::domain(format!(
                "basis change must be square, got {}x{}",
                c.nrows(),
                c.ncols()
            )));
        }
        check_dim(c.nrows())?;
        if !c.iter().all(linalg::is_finite) {
            return Err(Error::domain("basis change entries must be finite"));
        }
        let det = linalg::det(&c);
        if det.norm() < SINGULAR_DET {
            return Err(Error::Singular);
        }
        if (det - C64::new(1.0, 0.0)).norm() > TOL_DET {
            return Err(Error::NotUnimodular {
                re: det.re,
                im: det.im,
            });
        }
        let d = linalg::inverse(&c).ok_or(Error::Singular)?;
        let det_d = linalg::det(&d);
        if (det_d - C64::new(1.0, 0.0)).norm() > TOL_DET {
            return Err(Error::NotUnimodular {
                re: det_d.re,
                im: det_d.im,
            });
        }
        Ok(Self { c, d })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            c: linalg::identity(dim),
            d: linalg::identity(dim),
        })
    }

    /// `ω · 1_N` for an N-th root of unity `ω = exp(2πik/N)`.
    pub fn root_of_unity(dim: usize, k: usize) -> Result<Self> {
        check_dim(dim)?;
        let angle = 2.0 * std::f64::consts::PI * (k % dim) as f64 / dim as f64;
        let omega = C64::from_polar(1.0, angle);
        Self::new(linalg::identity(dim) * omega)
    }

    pub fn dim(&self) -> usize {
        self.c.nrows()
    }

    pub fn c(&self) -> &CMatrix {
        &self.c
    }

    pub fn d(&self) -> &CMatrix {
        &self.d
    }

    pub fn inverse(&self) -> Self {
        Self {
            c: self.d.clone(),
            d: self.c.clone(),
        }
    }
}

/// `b1 * b2` is the change "first `b1`, then `b2`": `c = c1 · c2`, `d = d2 · d1`.
impl Mul for &BasisChange {
    type Output = Result<BasisChange>;

    fn mul(self, rhs: &BasisChange) -> Self::Output {
        if self.dim() != rhs.dim() {
            return Err(Error::domain(format!(
                "cannot compose basis changes of dimension {} and {}",
                self.dim(),
                rhs.dim()
            )));
        }
        Ok(BasisChange {
            c: &self.c * &rhs.c,
            d: &rhs.d * &self.d,
        })
    }
}

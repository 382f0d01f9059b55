use nalgebra::DMatrix;

use super::{real_combination, HermVector, DUAL_VALENCY};
use crate::algebra::{check_dim, Spintensor};
use crate::linalg::{self, CMatrix, C64, I, ONE};
use crate::{Error, Result, TOL};

/// Identifier of the ordering and scaling produced by [`standard_herm_basis`].
pub const BASIS_ID_GELLMANN: &str = "gellmann-v1";

/// Gram matrices with reciprocal condition number below this are rejected.
const MIN_RCOND: f64 = 1e-12;

/// An ordered basis `E_0, …, E_{N²-1}` of `Herm(N)` with its dual `Eᵅ`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermBasis {
    elements: Vec<HermVector>,
    dual: Vec<CMatrix>,
}

impl HermBasis {
    pub fn new(elements: Vec<HermVector>) -> Result<Self> {
        let dual = dual_basis(&elements)?;
        Ok(Self { elements, dual })
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    /// `N²`
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermVector] {
        &self.elements
    }

    pub fn element(&self, alpha: usize) -> &CMatrix {
        self.elements[alpha].matrix()
    }

    /// Dual element as a matrix with the dotted index on rows.
    pub fn dual(&self, alpha: usize) -> &CMatrix {
        &self.dual[alpha]
    }

    pub fn duals(&self) -> &[CMatrix] {
        &self.dual
    }

    /// `Eᵅ` as a valency-`[0 0; 1 1]` spintensor with components `Eᵅ_{bċ}`.
    pub fn dual_spintensor(&self, alpha: usize) -> Spintensor {
        Spintensor::from_matrix(DUAL_VALENCY, &self.dual[alpha].transpose())
            .expect("square, n >= 2")
    }

    /// Full contraction `Eᵅ_{bċ} X^{bċ} = trace(Eᵅ X)`.
    pub fn pairing(&self, alpha: usize, x: &CMatrix) -> C64 {
        linalg::trace_of_product(&self.dual[alpha], x)
    }

    /// `pairing(α, E_β)` for all α, β.
    pub fn pairing_matrix(&self) -> CMatrix {
        let len = self.len();
        CMatrix::from_fn(len, len, |a, b| self.pairing(a, self.element(b)))
    }

    /// Real components `Xᵅ` with `X = Σ Xᵅ E_α`.
    pub fn components(&self, x: &HermVector) -> Result<Vec<f64>> {
        if x.dim() != self.dim() {
            return Err(Error::domain(format!(
                "vector of dimension {} against a basis of dimension {}",
                x.dim(),
                self.dim()
            )));
        }
        let scale = x.matrix().iter().map(|z| z.norm()).fold(1.0, f64::max);
        (0..self.len())
            .map(|a| {
                let v = self.pairing(a, x.matrix());
                if v.im.abs() > TOL * scale {
                    Err(Error::Convention {
                        residue: v.im.abs(),
                        tol: TOL * scale,
                    })
                } else {
                    Ok(v.re)
                }
            })
            .collect()
    }

    /// `Σ Xᵅ E_α`.
    pub fn assemble(&self, components: &[f64]) -> Result<HermVector> {
        if components.len() != self.len() {
            return Err(Error::domain(format!(
                "expected {} components, got {}",
                self.len(),
                components.len()
            )));
        }
        let mats: Vec<&CMatrix> = self.elements.iter().map(HermVector::matrix).collect();
        HermVector::new(real_combination(components, &mats))
    }
}

/// Identity followed by the generalized Gell-Mann matrices: symmetric pairs
/// `E_jk + E_kj` and antisymmetric pairs `-i E_jk + i E_kj` in lexicographic
/// `(j, k)` order, then the traceless diagonals in ascending size. For `N = 2`
/// this is exactly `(σ_0, σ_1, σ_2, σ_3)`.
pub fn standard_herm_basis(n: usize) -> Result<HermBasis> {
    check_dim(n)?;
    let mut mats = Vec::with_capacity(n * n);
    mats.push(CMatrix::identity(n, n));

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
        .collect();
    for &(j, k) in &pairs {
        let mut m = CMatrix::zeros(n, n);
        m[(j, k)] = ONE;
        m[(k, j)] = ONE;
        mats.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = CMatrix::zeros(n, n);
        m[(j, k)] = -I;
        m[(k, j)] = I;
        mats.push(m);
    }
    for l in 1..n {
        let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut m = CMatrix::zeros(n, n);
        for j in 0..l {
            m[(j, j)] = C64::new(scale, 0.0);
        }
        m[(l, l)] = C64::new(-scale * l as f64, 0.0);
        mats.push(m);
    }

    let elements = mats
        .into_iter()
        .map(HermVector::new)
        .collect::<Result<Vec<_>>>()?;
    HermBasis::new(elements)
}

/// Dual set `Eᵅ = Σ_β (G⁻¹)_{αβ} E_β` where `G_{αβ} = trace(E_α E_β)`.
pub fn dual_basis(elements: &[HermVector]) -> Result<Vec<CMatrix>> {
    let n = match elements.first() {
        Some(e) => e.dim(),
        None => return Err(Error::NotABasis),
    };
    if elements.iter().any(|e| e.dim() != n) {
        return Err(Error::domain("basis elements of mixed dimension"));
    }
    if elements.len() != n * n {
        return Err(Error::NotABasis);
    }
    let len = elements.len();
    let gram = DMatrix::<f64>::from_fn(len, len, |a, b| {
        linalg::trace_of_product(elements[a].matrix(), elements[b].matrix()).re
    });

    let sv = gram.clone().singular_values();
    let (smax, smin) = (sv.max(), sv.min());
    if smax.is_nan() || smax <= 0.0 || smin / smax < MIN_RCOND {
        return Err(Error::NotABasis);
    }
    let inv = gram.try_inverse().ok_or(Error::NotABasis)?;

    let mats: Vec<&CMatrix> = elements.iter().map(HermVector::matrix).collect();
    Ok((0..len)
        .map(|a| {
            let row: Vec<f64> = inv.row(a).iter().copied().collect();
            real_combination(&row, &mats)
        })
        .collect())
}

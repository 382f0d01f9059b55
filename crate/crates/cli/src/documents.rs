//! JSON file formats. Complex numbers are `[re, im]` pairs and matrices are
//! flattened row-major.

use anyhow::{bail, ensure, Result};
use finspinor::herm::{FLMatrix, HermBasis, HermVector};
use finspinor::metric::FinslerMetric;
use finspinor::{CMatrix, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub n: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let n = m.nrows();
        let entries = (0..n * n)
            .map(|i| {
                let z = m[(i / n, i % n)];
                [z.re, z.im]
            })
            .collect();
        Self { n, entries }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        ensure!(
            self.entries.len() == self.n * self.n,
            "matrix document with n = {} has {} entries, expected {}",
            self.n,
            self.entries.len(),
            self.n * self.n
        );
        ensure!(
            self.entries.iter().flatten().all(|x| x.is_finite()),
            "matrix document contains non-finite entries"
        );
        let n = self.n;
        Ok(CMatrix::from_fn(n, n, |i, j| {
            let [re, im] = self.entries[i * n + j];
            C64::new(re, im)
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisDocument {
    pub n: usize,
    pub basis_id: String,
    /// `E_α`, plain index on rows.
    pub elements: Vec<MatrixDocument>,
    /// `Eᵅ`, dotted index on rows.
    pub dual: Vec<MatrixDocument>,
}

impl BasisDocument {
    pub fn from_basis(basis: &HermBasis, basis_id: &str) -> Self {
        Self {
            n: basis.dim(),
            basis_id: basis_id.to_owned(),
            elements: basis
                .elements()
                .iter()
                .map(|e| MatrixDocument::from_matrix(e.matrix()))
                .collect(),
            dual: basis
                .duals()
                .iter()
                .map(MatrixDocument::from_matrix)
                .collect(),
        }
    }

    /// Rebuilds the basis from `elements`; the dual is recomputed.
    pub fn to_basis(&self) -> Result<HermBasis> {
        let elements = self
            .elements
            .iter()
            .map(|m| {
                ensure!(
                    m.n == self.n,
                    "basis element of size {} in an n = {} basis",
                    m.n,
                    self.n
                );
                Ok(HermVector::new(m.to_matrix()?)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HermBasis::new(elements)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FLDocument {
    pub n: usize,
    /// `n²`
    pub size: usize,
    /// Rows `α`, columns `β`: `Lᵅ_β`.
    pub entries: Vec<Vec<f64>>,
}

impl FLDocument {
    pub fn from_fl(l: &FLMatrix) -> Self {
        let e = l.entries();
        Self {
            n: l.dim(),
            size: e.nrows(),
            entries: (0..e.nrows())
                .map(|a| (0..e.ncols()).map(|b| e[(a, b)]).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub indices: Vec<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricDocument {
    pub n: usize,
    pub basis_id: String,
    pub coefficients: Vec<Coefficient>,
}

impl MetricDocument {
    pub fn from_metric(metric: &FinslerMetric, basis_id: &str) -> Self {
        Self {
            n: metric.dim(),
            basis_id: basis_id.to_owned(),
            coefficients: metric
                .iter()
                .map(|(indices, value)| Coefficient {
                    indices: indices.to_vec(),
                    value,
                })
                .collect(),
        }
    }

    pub fn to_metric(&self) -> Result<FinslerMetric> {
        if self.n < 2 {
            bail!("metric document needs n >= 2, got {}", self.n);
        }
        Ok(FinslerMetric::from_coefficients(
            self.n,
            self.coefficients
                .iter()
                .map(|c| (c.indices.clone(), c.value)),
        )?)
    }
}

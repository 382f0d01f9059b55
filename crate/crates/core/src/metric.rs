//! The invariant determinant on `Herm(N)` and the symmetric degree-N form
//! `G_{αβ…γ} Xᵅ Xᵝ ⋯ X^γ = det(Xᵅ E_α)`.
//!
//! Coefficients are extracted by polarizing the determinant into the mixed
//! determinant of N matrix arguments and stored once per sorted index
//! multiset.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::Rng;
use rayon::prelude::*;

use crate::herm::{FLMatrix, HermBasis, HermVector};
use crate::linalg::{self, CMatrix, C64};
use crate::sampling;
use crate::{Error, Result, TOL};

/// Coefficients with smaller magnitude are stored as exact zeros.
pub const ZERO_CUTOFF: f64 = 1e-12;

/// `det X`, real for Hermitian `X`.
pub fn det_invariant(x: &HermVector) -> Result<f64> {
    let det = linalg::det(x.matrix());
    let scale = det.re.abs().max(1.0);
    if det.im.abs() > TOL * scale {
        return Err(Error::Convention {
            residue: det.im.abs(),
            tol: TOL * scale,
        });
    }
    Ok(det.re)
}

/// Fully symmetric multilinear form with `mixed_determinant(A, …, A) = det A`:
///
/// `(1/N!) Σ_{∅≠S⊆[N]} (-1)^{N-|S|} det(Σ_{i∈S} A_i)`
pub fn mixed_determinant(mats: &[CMatrix]) -> Result<C64> {
    let groups: Vec<(&CMatrix, usize)> = mats.iter().map(|m| (m, 1)).collect();
    mixed_determinant_grouped(&groups)
}

/// Mixed determinant of `A_1` repeated `m_1` times, …, `A_r` repeated `m_r`
/// times. Subsets with the same composition share a determinant, so the
/// subset sum collapses to
/// `(1/N!) Σ_s Π_j C(m_j, s_j) (-1)^{N-|s|} det(Σ_j s_j A_j)` over
/// `0 <= s_j <= m_j`, `s != 0`.
fn mixed_determinant_grouped(groups: &[(&CMatrix, usize)]) -> Result<C64> {
    let n: usize = groups.iter().map(|(_, m)| m).sum();
    if n == 0 {
        return Err(Error::domain("mixed determinant of no matrices"));
    }
    if groups.iter().any(|(a, _)| a.nrows() != n || a.ncols() != n) {
        return Err(Error::domain(format!(
            "mixed determinant needs {n} matrices of size {n}x{n}"
        )));
    }
    // row-major copies
    let flat: Vec<Vec<C64>> = groups
        .iter()
        .map(|(a, _)| (0..n * n).map(|i| a[(i / n, i % n)]).collect())
        .collect();

    let mut counts = vec![0usize; groups.len()];
    let mut buf = vec![C64::new(0.0, 0.0); n * n];
    let mut acc = C64::new(0.0, 0.0);
    loop {
        // odometer over 0..=m_j
        let mut j = 0;
        while j < counts.len() && counts[j] == groups[j].1 {
            counts[j] = 0;
            j += 1;
        }
        if j == counts.len() {
            break;
        }
        counts[j] += 1;

        buf.fill(C64::new(0.0, 0.0));
        let mut weight = 1.0;
        let mut size = 0;
        for ((s, (_, m)), a) in counts.iter().zip(groups).zip(&flat) {
            if *s == 0 {
                continue;
            }
            weight *= binomial(*m, *s);
            size += s;
            let scale = *s as f64;
            for (b, x) in buf.iter_mut().zip(a) {
                *b += x * scale;
            }
        }
        let d = linalg::det_in_place(&mut buf, n) * weight;
        if (n - size).is_multiple_of(2) {
            acc += d;
        } else {
            acc -= d;
        }
    }
    Ok(acc / factorial(n))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Number of distinct orderings of a sorted multiset.
fn multiplicity(indices: &[usize]) -> f64 {
    let runs = indices
        .iter()
        .dedup_with_count()
        .map(|(count, _)| factorial(count));
    factorial(indices.len()) / runs.product::<f64>()
}

/// Symmetric coefficients `G` of the degree-N length form relative to a basis
/// of `Herm(N)`. Only nonzero coefficients are stored, keyed by sorted index
/// multisets.
#[derive(Debug, Clone, PartialEq)]
pub struct FinslerMetric {
    dim: usize,
    coefficients: BTreeMap<Vec<usize>, f64>,
    imag_residue: f64,
}

impl FinslerMetric {
    /// Builds a metric from `(indices, value)` pairs. Indices must be sorted,
    /// of length N, in range and unique.
    pub fn from_coefficients<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        crate::algebra::check_dim(dim)?;
        let mut coefficients = BTreeMap::new();
        for (indices, value) in entries {
            if indices.len() != dim {
                return Err(Error::domain(format!(
                    "coefficient index {indices:?} must have length {dim}"
                )));
            }
            if !indices.windows(2).all(|w| w[0] <= w[1]) {
                return Err(Error::domain(format!(
                    "coefficient index {indices:?} not sorted"
                )));
            }
            if indices.iter().any(|&i| i >= dim * dim) {
                return Err(Error::domain(format!(
                    "coefficient index {indices:?} outside 0..{}",
                    dim * dim
                )));
            }
            if !value.is_finite() {
                return Err(Error::domain("coefficient values must be finite"));
            }
            if coefficients.insert(indices.clone(), value).is_some() {
                return Err(Error::domain(format!("duplicate coefficient {indices:?}")));
            }
        }
        coefficients.retain(|_, v| *v != 0.0);
        Ok(Self {
            dim,
            coefficients,
            imag_residue: 0.0,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of components `N²` of the vectors the form acts on.
    pub fn num_components(&self) -> usize {
        self.dim * self.dim
    }

    /// `G` at any index tuple (order irrelevant).
    pub fn coefficient(&self, indices: &[usize]) -> f64 {
        let mut key = indices.to_vec();
        key.sort_unstable();
        self.coefficients.get(&key).copied().unwrap_or(0.0)
    }

    /// Nonzero coefficients in ascending multiset order.
    pub fn iter(&self) -> impl Iterator<Item = (&[usize], f64)> {
        self.coefficients.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn nonzero_count(&self) -> usize {
        self.coefficients.len()
    }

    /// Largest imaginary part dropped during extraction.
    pub fn imag_residue(&self) -> f64 {
        self.imag_residue
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        finsler_power(x, self)
    }
}

/// `G_{α…γ} = mixed_determinant(E_α, …, E_γ)` over all sorted multisets.
pub fn metric_coefficients(basis: &HermBasis) -> Result<FinslerMetric> {
    let n = basis.dim();
    let multisets: Vec<Vec<usize>> = (0..basis.len()).combinations_with_replacement(n).collect();

    let values: Vec<C64> = multisets
        .par_iter()
        .map(|ms| {
            let groups: Vec<(&CMatrix, usize)> = ms
                .iter()
                .dedup_with_count()
                .map(|(count, &a)| (basis.element(a), count))
                .collect();
            mixed_determinant_grouped(&groups)
        })
        .collect::<Result<_>>()?;

    let residue = values.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if residue > TOL {
        return Err(Error::Convention { residue, tol: TOL });
    }

    let coefficients = multisets
        .into_iter()
        .zip(values)
        .filter(|(_, v)| v.re.abs() >= ZERO_CUTOFF)
        .map(|(k, v)| (k, v.re))
        .collect();
    Ok(FinslerMetric {
        dim: n,
        coefficients,
        imag_residue: residue,
    })
}

/// `G_{αβ…γ} Xᵅ Xᵝ ⋯ X^γ` summed over all index tuples.
pub fn finsler_power(x: &[f64], metric: &FinslerMetric) -> Result<f64> {
    if x.len() != metric.num_components() {
        return Err(Error::domain(format!(
            "expected {} components, got {}",
            metric.num_components(),
            x.len()
        )));
    }
    Ok(metric
        .coefficients
        .iter()
        .map(|(ms, g)| g * multiplicity(ms) * ms.iter().map(|&a| x[a]).product::<f64>())
        .sum())
}

/// Draws `samples` component vectors `X` uniformly from the unit sphere and
/// returns `max |F(X) - F(L⁻¹ X)|`, where `F` is the length form.
pub fn check_forminvariance<R: Rng + ?Sized>(
    metric: &FinslerMetric,
    l: &FLMatrix,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    if l.dim() != metric.dim() {
        return Err(Error::domain(format!(
            "FL matrix for N = {} against a metric for N = {}",
            l.dim(),
            metric.dim()
        )));
    }
    let inv = l.try_inverse()?;
    let mut worst = 0.0_f64;
    for _ in 0..samples {
        let x: Vec<f64> = sampling::random_unit_vector(metric.num_components(), rng)
            .iter()
            .copied()
            .collect();
        let primed = inv.apply(&x)?;
        worst = worst.max((finsler_power(&x, metric)? - finsler_power(&primed, metric)?).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::herm::{epimorphism, standard_herm_basis};
    use crate::BasisChange;
    use nalgebra::DVector;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn det_of_identity_and_diagonal() {
        for n in 2..=5 {
            let x = HermVector::new(CMatrix::identity(n, n)).unwrap();
            assert_eq!(det_invariant(&x).unwrap(), 1.0);
        }
        let x = HermVector::new(CMatrix::from_diagonal(&DVector::from_vec(vec![
            c(3.0),
            c(1.0),
        ])))
        .unwrap();
        assert!((det_invariant(&x).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn det_invariant_under_change() {
        let mut rng = sampling::rng(2);
        for n in 2..=4 {
            let x = HermVector::new(sampling::random_hermitian(n, &mut rng)).unwrap();
            let b = sampling::random_sl(n, &mut rng);
            let before = det_invariant(&x).unwrap();
            let after = det_invariant(&x.transform(&b).unwrap()).unwrap();
            assert!((before - after).abs() <= 1e-9 * before.abs().max(1.0));
        }
    }

    #[test]
    fn mixed_determinant_diagonal_restriction() {
        let mut rng = sampling::rng(3);
        for n in 1..=4 {
            let a = sampling::complex_matrix(n, &mut rng);
            let md = mixed_determinant(&vec![a.clone(); n]).unwrap();
            let d = linalg::det(&a);
            assert!((md - d).norm() <= 1e-10 * d.norm().max(1.0));
        }
    }

    #[test]
    fn mixed_determinant_of_pauli_pairs() {
        let b = standard_herm_basis(2).unwrap();
        let s0 = b.element(0).clone();
        let s3 = b.element(3).clone();
        assert!(mixed_determinant(&[s0.clone(), s3.clone()]).unwrap().norm() < 1e-15);
        assert!((mixed_determinant(&[s0.clone(), s0]).unwrap() - c(1.0)).norm() < 1e-15);
        assert!((mixed_determinant(&[s3.clone(), s3]).unwrap() - c(-1.0)).norm() < 1e-15);
    }

    #[test]
    fn mixed_determinant_is_symmetric() {
        let mut rng = sampling::rng(4);
        let mats: Vec<_> = (0..3)
            .map(|_| sampling::complex_matrix(3, &mut rng))
            .collect();
        let base = mixed_determinant(&mats).unwrap();
        for p in (0..3).permutations(3) {
            let permuted: Vec<_> = p.iter().map(|&i| mats[i].clone()).collect();
            assert!((mixed_determinant(&permuted).unwrap() - base).norm() < 1e-12);
        }
    }

    #[test]
    fn mixed_determinant_size_mismatch() {
        assert!(mixed_determinant(&[CMatrix::identity(2, 2)]).is_err());
        assert!(mixed_determinant(&[]).is_err());
    }

    #[test]
    fn minkowski_coefficients() {
        let g = metric_coefficients(&standard_herm_basis(2).unwrap()).unwrap();
        assert_eq!(g.nonzero_count(), 4);
        assert_eq!(g.coefficient(&[0, 0]), 1.0);
        for a in 1..4 {
            assert_eq!(g.coefficient(&[a, a]), -1.0);
        }
        assert_eq!(g.coefficient(&[3, 0]), 0.0);
    }

    #[test]
    fn power_examples() {
        let g = metric_coefficients(&standard_herm_basis(2).unwrap()).unwrap();
        assert_eq!(finsler_power(&[1.0, 0.0, 0.0, 0.0], &g).unwrap(), 1.0);
        assert_eq!(finsler_power(&[2.0, 0.0, 0.0, 1.0], &g).unwrap(), 3.0);
        assert!(finsler_power(&[1.0], &g).is_err());
    }

    #[test]
    fn cubic_form_matches_determinant() {
        let basis = standard_herm_basis(3).unwrap();
        let g = metric_coefficients(&basis).unwrap();
        assert_eq!(g.coefficient(&[0, 0, 0]), 1.0);
        let mut rng = sampling::rng(5);
        for _ in 0..200 {
            let x: Vec<f64> = sampling::random_real_vector(9, &mut rng)
                .iter()
                .copied()
                .collect();
            let det = det_invariant(&basis.assemble(&x).unwrap()).unwrap();
            assert!((finsler_power(&x, &g).unwrap() - det).abs() <= 1e-9 * det.abs().max(1.0));
        }
    }

    #[test]
    fn homogeneity() {
        let g = metric_coefficients(&standard_herm_basis(3).unwrap()).unwrap();
        let mut rng = sampling::rng(6);
        let x: Vec<f64> = sampling::random_real_vector(9, &mut rng)
            .iter()
            .copied()
            .collect();
        let t = -1.3;
        let scaled: Vec<f64> = x.iter().map(|v| v * t).collect();
        let lhs = finsler_power(&scaled, &g).unwrap();
        let rhs = t.powi(3) * finsler_power(&x, &g).unwrap();
        assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0));
    }

    #[test]
    fn forminvariance_identity_and_boost() {
        let basis = standard_herm_basis(2).unwrap();
        let g = metric_coefficients(&basis).unwrap();
        let mut rng = sampling::rng(7);
        assert_eq!(
            check_forminvariance(&g, &FLMatrix::identity(2), 20, &mut rng).unwrap(),
            0.0
        );

        let eta = 2.0 * 0.5_f64.atanh();
        let boost = BasisChange::new(CMatrix::from_diagonal(&DVector::from_vec(vec![
            c((eta / 2.0).exp()),
            c((-eta / 2.0).exp()),
        ])))
        .unwrap();
        let l = epimorphism(&boost, &basis).unwrap();
        assert!(check_forminvariance(&g, &l, 50, &mut rng).unwrap() <= 1e-10);
        assert!(check_forminvariance(&g, &FLMatrix::identity(3), 1, &mut rng).is_err());
    }

    #[test]
    fn from_coefficients_validation() {
        assert!(FinslerMetric::from_coefficients(2, vec![(vec![0, 0], 1.0)]).is_ok());
        assert!(FinslerMetric::from_coefficients(2, vec![(vec![1, 0], 1.0)]).is_err());
        assert!(FinslerMetric::from_coefficients(2, vec![(vec![0, 4], 1.0)]).is_err());
        assert!(FinslerMetric::from_coefficients(2, vec![(vec![0], 1.0)]).is_err());
        assert!(
            FinslerMetric::from_coefficients(2, vec![(vec![0, 1], 1.0), (vec![0, 1], 2.0)])
                .is_err()
        );
    }

    #[test]
    fn grouped_matches_plain_subset_sum() {
        let mut rng = sampling::rng(9);
        let a = sampling::complex_matrix(4, &mut rng);
        let b = sampling::complex_matrix(4, &mut rng);
        let grouped = mixed_determinant_grouped(&[(&a, 3), (&b, 1)]).unwrap();
        let plain = mixed_determinant(&[a.clone(), b.clone(), a.clone(), a]).unwrap();
        assert!((grouped - plain).norm() < 1e-12 * plain.norm().max(1.0));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(&[0, 0]), 1.0);
        assert_eq!(multiplicity(&[0, 1]), 2.0);
        assert_eq!(multiplicity(&[0, 0, 1]), 3.0);
        assert_eq!(multiplicity(&[0, 1, 2]), 6.0);
    }
}

use std::fmt;

use super::{check_dim, BasisChange, NSpinor};
use crate::linalg::{CMatrix, C64, ONE, ZERO};
use crate::{Error, Result};

/// Valency `[k l; m n]`: `k` upper plain, `l` upper dotted, `m` lower plain and
/// `n` lower dotted indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Valency {
    pub upper: usize,
    pub upper_dotted: usize,
    pub lower: usize,
    pub lower_dotted: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    Upper,
    UpperDotted,
    Lower,
    LowerDotted,
}

impl AxisKind {
    pub fn is_upper(self) -> bool {
        matches!(self, AxisKind::Upper | AxisKind::UpperDotted)
    }

    pub fn is_dotted(self) -> bool {
        matches!(self, AxisKind::UpperDotted | AxisKind::LowerDotted)
    }
}

impl Valency {
    pub const SCALAR: Valency = Valency::new(0, 0, 0, 0);

    pub const fn new(upper: usize, upper_dotted: usize, lower: usize, lower_dotted: usize) -> Self {
        Self {
            upper,
            upper_dotted,
            lower,
            lower_dotted,
        }
    }

    pub fn rank(&self) -> usize {
        self.upper + self.upper_dotted + self.lower + self.lower_dotted
    }

    fn blocks(&self) -> [usize; 4] {
        [self.upper, self.upper_dotted, self.lower, self.lower_dotted]
    }

    /// Kind of the given axis under the fixed storage order
    /// `(upper | upper dotted | lower | lower dotted)`.
    pub fn axis_kind(&self, axis: usize) -> Option<AxisKind> {
        let kinds = [
            AxisKind::Upper,
            AxisKind::UpperDotted,
            AxisKind::Lower,
            AxisKind::LowerDotted,
        ];
        let mut offset = 0;
        for (len, kind) in self.blocks().into_iter().zip(kinds) {
            if axis < offset + len {
                return Some(kind);
            }
            offset += len;
        }
        None
    }

    fn remove(&self, kind: AxisKind) -> Self {
        let mut v = *self;
        match kind {
            AxisKind::Upper => v.upper -= 1,
            AxisKind::UpperDotted => v.upper_dotted -= 1,
            AxisKind::Lower => v.lower -= 1,
            AxisKind::LowerDotted => v.lower_dotted -= 1,
        }
        v
    }
}

impl std::ops::Add for Valency {
    type Output = Valency;

    fn add(self, rhs: Valency) -> Valency {
        Valency::new(
            self.upper + rhs.upper,
            self.upper_dotted + rhs.upper_dotted,
            self.lower + rhs.lower,
            self.lower_dotted + rhs.lower_dotted,
        )
    }
}

impl fmt::Display for Valency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} {}; {} {}]",
            self.upper, self.upper_dotted, self.lower, self.lower_dotted
        )
    }
}

/// Components of an N-spintensor in one canonical basis.
///
/// Axes are stored grouped as `(upper | upper dotted | lower | lower dotted)`
/// and the flat array is row-major, so the last axis varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Spintensor {
    dim: usize,
    valency: Valency,
    components: Vec<C64>,
}

impl Spintensor {
    pub fn new(dim: usize, valency: Valency, components: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        let expected = dim.pow(valency.rank() as u32);
        if components.len() != expected {
            return Err(Error::domain(format!(
                "valency {valency} in dimension {dim} needs {expected} components, got {}",
                components.len()
            )));
        }
        Ok(Self {
            dim,
            valency,
            components,
        })
    }

    pub fn zeros(dim: usize, valency: Valency) -> Result<Self> {
        check_dim(dim)?;
        Self::new(dim, valency, vec![ZERO; dim.pow(valency.rank() as u32)])
    }

    pub fn scalar(dim: usize, value: C64) -> Result<Self> {
        Self::new(dim, Valency::SCALAR, vec![value])
    }

    /// Valency `[1 0; 0 0]`.
    pub fn from_spinor(s: &NSpinor) -> Self {
        Self {
            dim: s.dim(),
            valency: Valency::new(1, 0, 0, 0),
            components: s.components().to_vec(),
        }
    }

    /// The mixed Kronecker delta `δᵃ_b` of valency `[1 0; 1 0]`.
    pub fn kronecker_delta(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let components = (0..dim * dim)
            .map(|i| if i / dim == i % dim { ONE } else { ZERO })
            .collect();
        Self::new(dim, Valency::new(1, 0, 1, 0), components)
    }

    /// Rank-2 tensor whose component at `(i, j)` is `m[(i, j)]`.
    pub fn from_matrix(valency: Valency, m: &CMatrix) -> Result<Self> {
        if valency.rank() != 2 || !m.is_square() {
            return Err(Error::domain(
                "from_matrix needs a square matrix and rank 2",
            ));
        }
        let n = m.nrows();
        let components = (0..n * n).map(|i| m[(i / n, i % n)]).collect();
        Self::new(n, valency, components)
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.rank() != 2 {
            return Err(Error::domain("only rank-2 spintensors have a matrix view"));
        }
        let n = self.dim;
        Ok(CMatrix::from_fn(n, n, |i, j| self.components[i * n + j]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valency(&self) -> Valency {
        self.valency
    }

    pub fn rank(&self) -> usize {
        self.valency.rank()
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    fn flat_index(&self, index: &[usize]) -> usize {
        index.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, index: &[usize]) -> Result<C64> {
        if index.len() != self.rank() || index.iter().any(|&i| i >= self.dim) {
            return Err(Error::domain(format!(
                "index {index:?} invalid for valency {} in dimension {}",
                self.valency, self.dim
            )));
        }
        Ok(self.components[self.flat_index(index)])
    }

    /// Only scalars (rank 0) have a single value.
    pub fn as_scalar(&self) -> Option<C64> {
        (self.rank() == 0).then(|| self.components[0])
    }

    pub fn add(&self, other: &Spintensor) -> Result<Spintensor> {
        if self.dim != other.dim || self.valency != other.valency {
            return Err(Error::domain("sum of spintensors of different type"));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            components,
            ..*self
        })
    }

    /// `S ⊗ U`, with each valency block of `S` followed by the matching block
    /// of `U`.
    pub fn tensor_product(&self, other: &Spintensor) -> Result<Spintensor> {
        if self.dim != other.dim {
            return Err(Error::domain(format!(
                "tensor product of dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let outer: Vec<C64> = self
            .components
            .iter()
            .flat_map(|a| other.components.iter().map(move |b| a * b))
            .collect();

        // axis positions in the plain outer product: self's axes then other's
        let sa = self.valency.blocks();
        let ua = other.valency.blocks();
        let mut perm = Vec::with_capacity(self.rank() + other.rank());
        let (mut s_off, mut u_off) = (0, self.rank());
        for block in 0..4 {
            perm.extend(s_off..s_off + sa[block]);
            perm.extend(u_off..u_off + ua[block]);
            s_off += sa[block];
            u_off += ua[block];
        }

        let rank = perm.len();
        Ok(Spintensor {
            dim: self.dim,
            valency: self.valency + other.valency,
            components: permute_axes(&outer, self.dim, rank, &perm),
        })
    }

    /// Sums an upper axis against a lower axis of the same kind (plain with
    /// plain, dotted with dotted). Axis ids refer to the storage order.
    pub fn contract(&self, upper_axis: usize, lower_axis: usize) -> Result<Spintensor> {
        let kind = |axis| {
            self.valency.axis_kind(axis).ok_or_else(|| {
                Error::domain(format!(
                    "axis {axis} out of range for valency {}",
                    self.valency
                ))
            })
        };
        let (up, lo) = (kind(upper_axis)?, kind(lower_axis)?);
        if !up.is_upper() || lo.is_upper() {
            return Err(Error::domain(format!(
                "contraction needs an upper and a lower axis, got {up:?} and {lo:?}"
            )));
        }
        if up.is_dotted() != lo.is_dotted() {
            return Err(Error::domain(
                "cannot contract a plain index with a dotted one",
            ));
        }

        let n = self.dim;
        let rank = self.rank();
        let strides = strides(n, rank);
        let kept: Vec<usize> = (0..rank)
            .filter(|&a| a != upper_axis && a != lower_axis)
            .collect();
        let out_len = n.pow(kept.len() as u32);
        let diag_stride = strides[upper_axis] + strides[lower_axis];

        let mut components = Vec::with_capacity(out_len);
        for flat in 0..out_len {
            let mut rem = flat;
            let mut base = 0;
            for &axis in kept.iter().rev() {
                base += (rem % n) * strides[axis];
                rem /= n;
            }
            components.push(
                (0..n)
                    .map(|t| self.components[base + t * diag_stride])
                    .sum(),
            );
        }

        Ok(Spintensor {
            dim: n,
            valency: self.valency.remove(up).remove(lo),
            components,
        })
    }

    /// Components in the primed basis: `d` on upper axes, `conj(d)` on upper
    /// dotted, `cᵀ` on lower and `c^H` on lower dotted axes.
    pub fn transform(&self, change: &BasisChange) -> Result<Spintensor> {
        if change.dim() != self.dim {
            return Err(Error::domain(format!(
                "spintensor of dimension {} cannot be transformed by a {}-dimensional change",
                self.dim,
                change.dim()
            )));
        }
        let upper = change.d().clone();
        let upper_dotted = change.d().map(|z| z.conj());
        let lower = change.c().transpose();
        let lower_dotted = change.c().adjoint();

        let mut components = self.components.clone();
        for axis in 0..self.rank() {
            let m = match self.valency.axis_kind(axis) {
                Some(AxisKind::Upper) => &upper,
                Some(AxisKind::UpperDotted) => &upper_dotted,
                Some(AxisKind::Lower) => &lower,
                Some(AxisKind::LowerDotted) => &lower_dotted,
                None => unreachable!(),
            };
            components = apply_along_axis(&components, self.dim, self.rank(), axis, m);
        }
        Ok(Spintensor {
            components,
            ..*self
        })
    }

    /// Largest entrywise modulus of the difference, or `None` when the types
    /// differ.
    pub fn max_abs_diff(&self, other: &Spintensor) -> Option<f64> {
        (self.dim == other.dim && self.valency == other.valency).then(|| {
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
        })
    }
}

fn strides(n: usize, rank: usize) -> Vec<usize> {
    let mut s = vec![1; rank];
    for a in (0..rank.saturating_sub(1)).rev() {
        s[a] = s[a + 1] * n;
    }
    s
}

/// New axis `i` is old axis `perm[i]`.
fn permute_axes(data: &[C64], n: usize, rank: usize, perm: &[usize]) -> Vec<C64> {
    let old = strides(n, rank);
    let mut out = Vec::with_capacity(data.len());
    for flat in 0..data.len() {
        let mut rem = flat;
        let mut src = 0;
        for i in (0..rank).rev() {
            src += (rem % n) * old[perm[i]];
            rem /= n;
        }
        out.push(data[src]);
    }
    out
}

/// `out[.., a, ..] = Σ_e m[(a, e)] data[.., e, ..]` on the given axis.
fn apply_along_axis(data: &[C64], n: usize, rank: usize, axis: usize, m: &CMatrix) -> Vec<C64> {
    let inner = n.pow((rank - axis - 1) as u32);
    let outer = n.pow(axis as u32);
    let mut out = vec![ZERO; data.len()];
    for o in 0..outer {
        for a in 0..n {
            let dst = (o * n + a) * inner;
            for e in 0..n {
                let coeff = m[(a, e)];
                if coeff == ZERO {
                    continue;
                }
                let src = (o * n + e) * inner;
                for i in 0..inner {
                    out[dst + i] += coeff * data[src + i];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;

    #[test]
    fn axis_kinds_follow_storage_order() {
        let v = Valency::new(1, 2, 1, 1);
        let kinds: Vec<_> = (0..5).map(|a| v.axis_kind(a).unwrap()).collect();
        assert_eq!(
            kinds,
            vec![
                AxisKind::Upper,
                AxisKind::UpperDotted,
                AxisKind::UpperDotted,
                AxisKind::Lower,
                AxisKind::LowerDotted
            ]
        );
        assert_eq!(v.axis_kind(5), None);
        assert_eq!(v.to_string(), "[1 2; 1 1]");
    }

    #[test]
    fn component_count_checked() {
        assert!(Spintensor::new(2, Valency::new(1, 1, 0, 0), vec![ONE; 3]).is_err());
        assert!(Spintensor::new(1, Valency::SCALAR, vec![ONE]).is_err());
        assert!(Spintensor::new(3, Valency::new(1, 0, 1, 0), vec![ONE; 9]).is_ok());
    }

    #[test]
    fn product_with_unit_scalar_is_identity() {
        let mut rng = sampling::rng(1);
        let s = sampling::random_spintensor(3, Valency::new(1, 1, 0, 1), &mut rng);
        let one = Spintensor::scalar(3, ONE).unwrap();
        assert_eq!(s.tensor_product(&one).unwrap(), s);
        assert_eq!(one.tensor_product(&s).unwrap(), s);
    }

    #[test]
    fn product_of_two_spinors_is_outer_product() {
        let mut rng = sampling::rng(2);
        let xi = sampling::random_spinor(3, &mut rng);
        let eta = sampling::random_spinor(3, &mut rng);
        let p = Spintensor::from_spinor(&xi)
            .tensor_product(&Spintensor::from_spinor(&eta))
            .unwrap();
        assert_eq!(p.valency(), Valency::new(2, 0, 0, 0));
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(
                    p.get(&[a, b]).unwrap(),
                    xi.components()[a] * eta.components()[b]
                );
            }
        }
    }

    #[test]
    fn product_interleaves_blocks() {
        let mut rng = sampling::rng(3);
        let s = sampling::random_spintensor(2, Valency::new(1, 0, 1, 0), &mut rng);
        let u = sampling::random_spintensor(2, Valency::new(1, 1, 0, 0), &mut rng);
        let p = s.tensor_product(&u).unwrap();
        assert_eq!(p.valency(), Valency::new(2, 1, 1, 0));
        // storage: (s upper, u upper, u upper dotted, s lower)
        for i in 0..16 {
            let (a, b, c, d) = (i / 8, (i / 4) % 2, (i / 2) % 2, i % 2);
            let expected = s.get(&[a, d]).unwrap() * u.get(&[b, c]).unwrap();
            assert_eq!(p.get(&[a, b, c, d]).unwrap(), expected);
        }
    }

    #[test]
    fn trace_of_delta() {
        for n in 2..=5 {
            let c = Spintensor::kronecker_delta(n)
                .unwrap()
                .contract(0, 1)
                .unwrap();
            assert_eq!(c.as_scalar(), Some(C64::new(n as f64, 0.0)));
        }
    }

    #[test]
    fn contraction_errors() {
        let t = Spintensor::zeros(2, Valency::new(1, 1, 1, 1)).unwrap();
        // plain with dotted
        assert!(t.contract(0, 3).is_err());
        assert!(t.contract(1, 2).is_err());
        // two uppers, or lower given first
        assert!(t.contract(0, 1).is_err());
        assert!(t.contract(2, 0).is_err());
        assert!(t.contract(0, 4).is_err());
        assert!(t.contract(0, 2).is_ok());
        assert!(t.contract(1, 3).is_ok());
    }

    #[test]
    fn transform_identity_is_exact() {
        let mut rng = sampling::rng(4);
        let s = sampling::random_spintensor(3, Valency::new(1, 1, 1, 1), &mut rng);
        assert_eq!(s.transform(&BasisChange::identity(3).unwrap()).unwrap(), s);
    }

    #[test]
    fn transform_of_spinor_matches_spinor_transform() {
        let mut rng = sampling::rng(5);
        let b = sampling::random_sl(4, &mut rng);
        let xi = sampling::random_spinor(4, &mut rng);
        let via_tensor = Spintensor::from_spinor(&xi).transform(&b).unwrap();
        let direct = Spintensor::from_spinor(&xi.transform(&b).unwrap());
        assert!(via_tensor.max_abs_diff(&direct).unwrap() < 1e-12);
    }

    #[test]
    fn transform_dim_mismatch() {
        let s = Spintensor::zeros(2, Valency::new(1, 0, 0, 0)).unwrap();
        assert!(s.transform(&BasisChange::identity(3).unwrap()).is_err());
        let t = Spintensor::zeros(3, Valency::new(1, 0, 0, 0)).unwrap();
        assert!(s.tensor_product(&t).is_err());
    }

    #[test]
    fn delta_is_invariant() {
        let mut rng = sampling::rng(6);
        let b = sampling::random_sl(3, &mut rng);
        let delta = Spintensor::kronecker_delta(3).unwrap();
        assert!(delta.transform(&b).unwrap().max_abs_diff(&delta).unwrap() < 1e-10);
    }
}

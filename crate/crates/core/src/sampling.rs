//! Seeded random sampling of spinors, spintensors, Hermitian matrices and
//! `SL(N,C)` elements.
//!
//! All randomness goes through [`rng`], a ChaCha8 stream seeded from a single
//! `u64`, so every run is replayable from its seed.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{BasisChange, NSpinor, Spintensor, Valency};
use crate::linalg::{self, CMatrix, C64};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real and imaginary parts drawn independently from N(0, 1).
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn complex_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| complex_normal(rng))
}

pub fn random_spinor<R: Rng + ?Sized>(n: usize, rng: &mut R) -> NSpinor {
    NSpinor::new((0..n).map(|_| complex_normal(rng)).collect()).expect("n >= 2")
}

pub fn random_spintensor<R: Rng + ?Sized>(n: usize, valency: Valency, rng: &mut R) -> Spintensor {
    let len = n.pow(valency.rank() as u32);
    Spintensor::new(n, valency, (0..len).map(|_| complex_normal(rng)).collect()).expect("n >= 2")
}

/// A random element of `SL(N,C)`: i.i.d. complex normal entries divided by the
/// principal N-th root of the determinant. Draws with `|det| < 1e-6` are
/// rejected and redrawn.
pub fn random_sl<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BasisChange {
    loop {
        let m = complex_matrix(n, rng);
        let det = linalg::det(&m);
        if det.norm() < 1e-6 {
            continue;
        }
        let root = det.powf(1.0 / n as f64);
        if let Ok(change) = BasisChange::new(m / root) {
            return change;
        }
    }
}

/// Random Hermitian matrix `(A + A^H) / 2` with `A` complex normal.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let a = complex_matrix(n, rng);
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}

pub fn random_real_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> DVector<f64> {
    DVector::from_fn(len, |_, _| rng.sample(StandardNormal))
}

/// Uniform on the unit sphere of `R^len`.
pub fn random_unit_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> DVector<f64> {
    loop {
        let v = random_real_vector(len, rng);
        let norm = v.norm();
        if norm > 1e-8 {
            return v / norm;
        }
    }
}

/// Uniform in `[lo, hi)`.
pub fn uniform<R: Rng + ?Sized>(lo: f64, hi: f64, rng: &mut R) -> f64 {
    rng.random_range(lo..hi)
}

//! Small dense complex linear-algebra helpers on top of `nalgebra`.

use nalgebra::DMatrix;
pub use num_complex::Complex64 as C64;

pub type CMatrix = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Complex determinant via LU.
pub fn det(m: &CMatrix) -> C64 {
    m.clone().lu().determinant()
}

pub fn inverse(m: &CMatrix) -> Option<CMatrix> {
    m.clone().try_inverse()
}

/// `trace(a * b)` without forming the product.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs_diff_real(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn is_finite(z: &C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Hermiticity defect `max |m - m^H|`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Determinant of the row-major `n x n` matrix in `buf` by Gaussian
/// elimination with partial pivoting. `buf` is overwritten.
pub fn det_in_place(buf: &mut [C64], n: usize) -> C64 {
    debug_assert_eq!(buf.len(), n * n);
    let mut det = ONE;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| {
                buf[a * n + col]
                    .norm_sqr()
                    .total_cmp(&buf[b * n + col].norm_sqr())
            })
            .expect("nonempty range");
        let p = buf[pivot * n + col];
        if p == ZERO {
            return ZERO;
        }
        if pivot != col {
            for k in 0..n {
                buf.swap(pivot * n + k, col * n + k);
            }
            det = -det;
        }
        det *= p;
        for row in col + 1..n {
            let factor = buf[row * n + col] / p;
            if factor == ZERO {
                continue;
            }
            for k in col + 1..n {
                let v = buf[col * n + k];
                buf[row * n + k] -= factor * v;
            }
        }
    }
    det
}

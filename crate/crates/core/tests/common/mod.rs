//! Brute-force oracles written directly from the index formulas. They share
//! no code paths with the library beyond reading its inputs.

#![allow(dead_code)]

use finspinor::{BasisChange, CMatrix, NSpinor, Spintensor, C64};
use itertools::Itertools;

pub fn bubble_parity(p: &[usize]) -> f64 {
    let mut v = p.to_vec();
    let mut swaps = 0;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                swaps += 1;
            }
        }
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `Σ_perm sign(perm) Π_j spinors[j][perm[j]]`.
pub fn permutation_expansion(spinors: &[NSpinor]) -> C64 {
    let n = spinors.len();
    (0..n)
        .permutations(n)
        .map(|p| {
            let prod: C64 = p
                .iter()
                .enumerate()
                .map(|(j, &a)| spinors[j].components()[a])
                .product();
            prod * bubble_parity(&p)
        })
        .sum()
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &CMatrix) -> C64 {
    let n = m.nrows();
    if n == 1 {
        return m[(0, 0)];
    }
    (0..n)
        .map(|j| {
            let minor = m.clone().remove_row(0).remove_column(j);
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            m[(0, j)] * cofactor_det(&minor) * sign
        })
        .sum()
}

/// `c_a^b` with the upper index naming the row of `c`.
fn c_coef(b: &BasisChange, lower: usize, upper: usize) -> C64 {
    b.c()[(upper, lower)]
}

/// `d^a_b` with the upper index naming the row of `d`.
fn d_coef(b: &BasisChange, upper: usize, lower: usize) -> C64 {
    b.d()[(upper, lower)]
}

/// Transformation of a valency-`[1 1; 1 1]` spintensor, eight nested loops:
///
/// `S'^{bċ}_{aḋ} = c_a^e conj(c_ḋ^ḣ) d^b_f conj(d^ċ_ġ) S^{fġ}_{eḣ}`
///
/// Components are addressed as `(b, ċ, a, ḋ)`.
pub fn transform_1111(s: &Spintensor, change: &BasisChange) -> Vec<C64> {
    let n = s.dim();
    let at = |b: usize, c: usize, a: usize, d: usize| ((b * n + c) * n + a) * n + d;
    let mut out = vec![C64::new(0.0, 0.0); n.pow(4)];
    for b in 0..n {
        for c in 0..n {
            for a in 0..n {
                for d in 0..n {
                    let mut acc = C64::new(0.0, 0.0);
                    for e in 0..n {
                        for h in 0..n {
                            for f in 0..n {
                                for g in 0..n {
                                    acc += c_coef(change, a, e)
                                        * c_coef(change, d, h).conj()
                                        * d_coef(change, b, f)
                                        * d_coef(change, c, g).conj()
                                        * s.components()[at(f, g, e, h)];
                                }
                            }
                        }
                    }
                    out[at(b, c, a, d)] = acc;
                }
            }
        }
    }
    out
}

/// `T^{ċ}_{ḋ} = Σ_t S^{tċ}_{tḋ}` for valency `[1 1; 1 1]`.
pub fn contract_plain_1111(s: &Spintensor) -> Vec<C64> {
    let n = s.dim();
    let at = |b: usize, c: usize, a: usize, d: usize| ((b * n + c) * n + a) * n + d;
    let mut out = Vec::new();
    for c in 0..n {
        for d in 0..n {
            out.push((0..n).map(|t| s.components()[at(t, c, t, d)]).sum());
        }
    }
    out
}

/// `T^{b}_{a} = Σ_t S^{bṫ}_{aṫ}` for valency `[1 1; 1 1]`.
pub fn contract_dotted_1111(s: &Spintensor) -> Vec<C64> {
    let n = s.dim();
    let at = |b: usize, c: usize, a: usize, d: usize| ((b * n + c) * n + a) * n + d;
    let mut out = Vec::new();
    for b in 0..n {
        for a in 0..n {
            out.push((0..n).map(|t| s.components()[at(b, t, a, t)]).sum());
        }
    }
    out
}

/// `Lᵅ_β = Eᵅ_{bċ} c^b_f conj(c^ċ_ġ) E_β^{fġ}` by explicit summation. The
/// dual components come from the valency-`[0 0; 1 1]` spintensor view.
pub fn l_by_index_sum(
    change: &BasisChange,
    elements: &[CMatrix],
    duals: &[Spintensor],
) -> Vec<Vec<f64>> {
    let n = change.dim();
    let len = elements.len();
    let mut out = vec![vec![0.0; len]; len];
    for alpha in 0..len {
        for beta in 0..len {
            let mut acc = C64::new(0.0, 0.0);
            for b in 0..n {
                for c in 0..n {
                    for f in 0..n {
                        for g in 0..n {
                            acc += duals[alpha].components()[b * n + c]
                                * change.c()[(b, f)]
                                * change.c()[(c, g)].conj()
                                * elements[beta][(f, g)];
                        }
                    }
                }
            }
            assert!(acc.im.abs() < 1e-9, "L entry not real: {acc}");
            out[alpha][beta] = acc.re;
        }
    }
    out
}

pub fn pauli() -> [CMatrix; 4] {
    let c = |re: f64, im: f64| C64::new(re, im);
    [
        CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]),
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
        CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
    ]
}

pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Prints a single acceptance line and panics on failure.
pub fn report(id: &str, title: &str, value: f64, bound: &str, passed: bool) {
    let tag = if passed { "PASS" } else { "FAIL" };
    println!("[{tag}] {id:<5} {title:<58} value={value:.3e} bound {bound}");
    assert!(passed, "{id} {title}: value {value:e} violates {bound}");
}

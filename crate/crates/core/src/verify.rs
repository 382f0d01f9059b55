//! Seeded property suites over `N = 2..=max_n`.
//!
//! Every check reduces to one number (usually a worst-case deviation) and a
//! bound. Deviations marked "rel" are divided by `max(1, |reference|)`.

use std::fmt;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{column_matrix, scalar_n_product, BasisChange, NSpinor, Valency};
use crate::herm::{
    check_homomorphism, epimorphism, image_residual, standard_herm_basis, HermBasis, HermVector,
    KERNEL_TOL,
};
use crate::linalg::{self, CMatrix, C64};
use crate::metric::{
    check_forminvariance, det_invariant, finsler_power, metric_coefficients, mixed_determinant,
    FinslerMetric,
};
use crate::sampling::{self, SampleRng};
use crate::{Error, Result};

pub const MIN_N: usize = 2;
pub const MAX_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    AtMost(f64),
    Above(f64),
    AtLeast(f64),
}

impl Bound {
    fn holds(self, value: f64) -> bool {
        match self {
            Bound::AtMost(t) => value <= t,
            Bound::Above(t) => value > t,
            Bound::AtLeast(t) => value >= t,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::AtMost(t) => write!(f, "<= {t:.0e}"),
            Bound::Above(t) => write!(f, ">  {t:.0e}"),
            Bound::AtLeast(t) => write!(f, ">= {t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub n: usize,
    pub value: f64,
    pub bound: Bound,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.bound.holds(self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub seed: u64,
    pub samples: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<6} {:<14} {:<3} {:<28} {:>12}  {:<10}",
            "result", "suite", "N", "check", "value", "bound"
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<6} {:<14} {:<3} {:<28} {:>12.3e}  {}",
                if c.passed() { "PASS" } else { "FAIL" },
                c.suite,
                c.n,
                c.name,
                c.value,
                c.bound
            )?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} checks, {} passed, {} failed",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        )
    }
}

/// Runs every suite for `N = 2..=max_n` from a single seeded stream.
pub fn run(config: &VerifyConfig) -> Result<Report> {
    if !(MIN_N..=MAX_N).contains(&config.max_n) {
        return Err(Error::domain(format!(
            "max N must be in {MIN_N}..={MAX_N}, got {}",
            config.max_n
        )));
    }
    if config.samples == 0 {
        return Err(Error::domain("samples must be positive"));
    }
    let mut rng = sampling::rng(config.seed);
    let mut report = Report::default();
    for n in MIN_N..=config.max_n {
        let mut ctx = Ctx {
            n,
            samples: config.samples,
            rng: &mut rng,
            out: &mut report.checks,
        };
        ctx.core_algebra()?;
        let basis = standard_herm_basis(n)?;
        ctx.herm_space(&basis)?;
        ctx.finsler_metric(&basis)?;
    }
    Ok(report)
}

struct Ctx<'a> {
    n: usize,
    samples: usize,
    rng: &'a mut SampleRng,
    out: &'a mut Vec<CheckResult>,
}

fn rel(diff: f64, reference: f64) -> f64 {
    diff / reference.abs().max(1.0)
}

impl Ctx<'_> {
    fn push(&mut self, suite: &'static str, name: &'static str, value: f64, bound: Bound) {
        self.out.push(CheckResult {
            suite,
            name,
            n: self.n,
            value,
            bound,
        });
    }

    fn spinors(&mut self) -> Vec<NSpinor> {
        (0..self.n)
            .map(|_| sampling::random_spinor(self.n, self.rng))
            .collect()
    }

    fn core_algebra(&mut self) -> Result<()> {
        const SUITE: &str = "core-algebra";
        let n = self.n;
        let (mut vs_det, mut antisym, mut linear, mut dependent) =
            (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
        for _ in 0..self.samples {
            let mut s = self.spinors();
            let p = scalar_n_product(&s)?;
            let det = linalg::det(&column_matrix(&s));
            vs_det = vs_det.max((p - det).norm() / det.norm().max(1.0));

            let (i, j) = two_distinct(n, self.rng);
            let mut swapped = s.clone();
            swapped.swap(i, j);
            antisym = antisym.max((scalar_n_product(&swapped)? + p).norm() / p.norm().max(1.0));

            let slot = self.rng.random_range(0..n);
            let z = sampling::complex_normal(self.rng);
            let eta = sampling::random_spinor(n, self.rng);
            let mixed = NSpinor::new(
                s[slot]
                    .components()
                    .iter()
                    .zip(eta.components())
                    .map(|(x, y)| z * x + y)
                    .collect(),
            )?;
            let mut with_eta = s.clone();
            with_eta[slot] = eta;
            let p_eta = scalar_n_product(&with_eta)?;
            s[slot] = mixed;
            let lhs = scalar_n_product(&s)?;
            let rhs = z * p + p_eta;
            linear = linear.max((lhs - rhs).norm() / (z.norm() * p.norm() + p_eta.norm()).max(1.0));

            // last spinor a combination of the others
            let coeffs: Vec<C64> = (0..n - 1)
                .map(|_| sampling::complex_normal(self.rng))
                .collect();
            let combo = (0..n)
                .map(|a| (0..n - 1).map(|k| coeffs[k] * s[k].components()[a]).sum())
                .collect();
            s[n - 1] = NSpinor::new(combo)?;
            dependent = dependent.max(scalar_n_product(&s)?.norm());
        }
        self.push(SUITE, "n-product = det (rel)", vs_det, Bound::AtMost(1e-12));
        self.push(SUITE, "antisymmetry (rel)", antisym, Bound::AtMost(1e-12));
        self.push(SUITE, "multilinearity (rel)", linear, Bound::AtMost(1e-12));
        self.push(
            SUITE,
            "dependent set vanishes",
            dependent,
            Bound::AtMost(1e-10),
        );

        let valency = Valency::new(1, 1, 1, 1);
        let (mut ident, mut compose) = (0.0_f64, 0.0_f64);
        for _ in 0..self.samples {
            let s = sampling::random_spintensor(n, valency, self.rng);
            let b1 = sampling::random_sl(n, self.rng);
            let b2 = sampling::random_sl(n, self.rng);
            let id = s.transform(&BasisChange::identity(n)?)?;
            ident = ident.max(id.max_abs_diff(&s).unwrap_or(f64::INFINITY));
            let twice = s.transform(&b1)?.transform(&b2)?;
            let once = s.transform(&(&b1 * &b2)?)?;
            let scale = once
                .components()
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            compose = compose.max(rel(
                twice.max_abs_diff(&once).unwrap_or(f64::INFINITY),
                scale,
            ));
        }
        self.push(SUITE, "transform identity exact", ident, Bound::AtMost(0.0));
        self.push(
            SUITE,
            "transform composition (rel)",
            compose,
            Bound::AtMost(1e-10),
        );

        let basis = standard_herm_basis(n)?;
        let mut dual = 0.0_f64;
        for alpha in 0..basis.len() {
            let upper = basis.dual_spintensor(alpha);
            for beta in 0..basis.len() {
                let pair = upper.tensor_product(&basis.elements()[beta].to_spintensor())?;
                // axes: E_β upper, E_β upper dotted, Eᵅ lower, Eᵅ lower dotted
                let full = pair.contract(0, 2)?.contract(0, 1)?;
                let v = full.as_scalar().expect("rank 0");
                let delta = if alpha == beta { 1.0 } else { 0.0 };
                dual = dual.max((v - C64::new(delta, 0.0)).norm());
            }
        }
        self.push(
            SUITE,
            "contraction(E^a x E_b) = d",
            dual,
            Bound::AtMost(1e-10),
        );
        Ok(())
    }

    fn herm_space(&mut self, basis: &HermBasis) -> Result<()> {
        const SUITE: &str = "herm-space";
        let n = self.n;
        let (mut residue, mut hom, mut inv, mut image) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
        let mut non_kernel = f64::INFINITY;
        let (mut lorentz, mut det_l, mut time00) = (0.0_f64, 0.0_f64, f64::INFINITY);
        let eta = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -1.0, -1.0, -1.0]));

        for _ in 0..self.samples {
            let b = sampling::random_sl(n, self.rng);
            let c = sampling::random_sl(n, self.rng);
            let lc = epimorphism(&c, basis)?;
            residue = residue.max(lc.imag_residue());
            hom = hom.max(check_homomorphism(&b, &c, basis)?);
            let lc_inv = epimorphism(&c.inverse(), basis)?;
            inv = inv.max(lc_inv.mul(&lc)?.identity_deviation());
            image = image.max(image_residual(&c, basis, &lc)?);
            if !is_scalar(c.c()) {
                non_kernel = non_kernel.min(lc.identity_deviation());
            }
            if n == 2 {
                let l = lc.entries();
                lorentz = lorentz.max(linalg::max_abs_diff_real(&(l.transpose() * &eta * l), &eta));
                det_l = det_l.max((l.determinant() - 1.0).abs());
                time00 = time00.min(l[(0, 0)]);
            }
        }
        let scalars = (0..n)
            .map(|k| {
                Ok(epimorphism(&BasisChange::root_of_unity(n, k)?, basis)?.identity_deviation())
            })
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);

        self.push(SUITE, "L imaginary residue", residue, Bound::AtMost(1e-10));
        self.push(SUITE, "L(BC) = L(B)L(C)", hom, Bound::AtMost(1e-9));
        self.push(SUITE, "L(C^-1)L(C) = 1", inv, Bound::AtMost(1e-9));
        self.push(
            SUITE,
            "kernel: roots of unity",
            scalars,
            Bound::AtMost(KERNEL_TOL),
        );
        self.push(
            SUITE,
            "kernel: random excluded",
            non_kernel,
            Bound::Above(1e-3),
        );
        self.push(SUITE, "C E C^H = L E residual", image, Bound::AtMost(1e-9));
        if n == 2 {
            self.push(SUITE, "L^T eta L = eta", lorentz, Bound::AtMost(1e-9));
            self.push(SUITE, "det L = 1", det_l, Bound::AtMost(1e-9));
            self.push(SUITE, "min L^0_0", time00, Bound::AtLeast(1.0 - 1e-9));
        }
        Ok(())
    }

    fn finsler_metric(&mut self, basis: &HermBasis) -> Result<()> {
        const SUITE: &str = "finsler-metric";
        let n = self.n;
        let metric = metric_coefficients(basis)?;
        self.push(
            SUITE,
            "G imaginary residue",
            metric.imag_residue(),
            Bound::AtMost(1e-10),
        );

        let (mut diag, mut homog, mut det_inv) = (0.0_f64, 0.0_f64, 0.0_f64);
        for _ in 0..self.samples {
            let x = HermVector::new(sampling::random_hermitian(n, self.rng))?;
            let det = det_invariant(&x)?;
            let comps = basis.components(&x)?;
            diag = diag.max(rel((finsler_power(&comps, &metric)? - det).abs(), det));

            let t = sampling::uniform(-2.0, 2.0, self.rng);
            let scaled: Vec<f64> = comps.iter().map(|v| v * t).collect();
            let expected = t.powi(n as i32) * finsler_power(&comps, &metric)?;
            homog = homog.max(rel(
                (finsler_power(&scaled, &metric)? - expected).abs(),
                expected,
            ));

            let c = sampling::random_sl(n, self.rng);
            det_inv = det_inv.max((det - det_invariant(&x.transform(&c)?)?).abs());
        }
        self.push(SUITE, "F(components X) = det X", diag, Bound::AtMost(1e-9));
        self.push(SUITE, "homogeneity (rel)", homog, Bound::AtMost(1e-10));
        self.push(SUITE, "det X invariant", det_inv, Bound::AtMost(1e-9));
        let sym = self.symmetry(basis, &metric)?;
        self.push(SUITE, "G symmetric", sym, Bound::AtMost(1e-10));
        let witness = indefinite_witness(basis, &metric)?;
        self.push(SUITE, "indefinite witness", witness, Bound::Above(0.0));

        if n <= 4 {
            let mut form = 0.0_f64;
            for _ in 0..self.samples {
                let c = sampling::random_sl(n, self.rng);
                let l = epimorphism(&c, basis)?;
                form = form.max(check_forminvariance(&metric, &l, 1, self.rng)?);
            }
            self.push(SUITE, "forminvariance", form, Bound::AtMost(1e-8));
        }
        Ok(())
    }

    /// Stored coefficients against the mixed determinant on shuffled tuples.
    fn symmetry(&mut self, basis: &HermBasis, metric: &FinslerMetric) -> Result<f64> {
        let mut worst = 0.0_f64;
        for _ in 0..self.samples {
            let mut idx: Vec<usize> = (0..self.n)
                .map(|_| self.rng.random_range(0..basis.len()))
                .collect();
            idx.shuffle(self.rng);
            let mats: Vec<CMatrix> = idx.iter().map(|&a| basis.element(a).clone()).collect();
            let direct = mixed_determinant(&mats)?;
            worst = worst.max((direct - C64::new(metric.coefficient(&idx), 0.0)).norm());
        }
        Ok(worst)
    }
}

/// `min(F(X+), -F(X-))` for `X+ = 1` and `X- = diag(1, …, 1, -1)`; positive
/// when the form takes both signs.
pub fn indefinite_witness(basis: &HermBasis, metric: &FinslerMetric) -> Result<f64> {
    let n = basis.dim();
    let plus = HermVector::new(CMatrix::identity(n, n))?;
    let mut minus = CMatrix::identity(n, n);
    minus[(n - 1, n - 1)] = C64::new(-1.0, 0.0);
    let minus = HermVector::new(minus)?;
    let f_plus = finsler_power(&basis.components(&plus)?, metric)?;
    let f_minus = finsler_power(&basis.components(&minus)?, metric)?;
    Ok(f_plus.min(-f_minus))
}

fn two_distinct<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let i = rng.random_range(0..n);
    let j = (i + rng.random_range(1..n)) % n;
    (i, j)
}

fn is_scalar(m: &CMatrix) -> bool {
    let d = m[(0, 0)];
    let n = m.nrows();
    (0..n).all(|i| {
        (0..n).all(|j| (m[(i, j)] - if i == j { d } else { C64::new(0.0, 0.0) }).norm() < 1e-12)
    })
}

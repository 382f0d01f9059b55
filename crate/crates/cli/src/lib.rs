//! Command implementations behind the `finspinor` binary.

pub mod documents;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context};
use finspinor::herm::{epimorphism, is_in_kernel, standard_herm_basis, HermBasis};
use finspinor::metric::{finsler_power, metric_coefficients};
use finspinor::verify::{self, VerifyConfig};
use finspinor::{BasisChange, Error, BASIS_ID_GELLMANN};
use serde::Serialize;

use documents::{BasisDocument, FLDocument, MatrixDocument, MetricDocument};

/// Largest N accepted by `metric`; coefficient extraction grows like `C(N²+N-1, N) · 2^N`.
pub const METRIC_MAX_N: usize = 5;

#[derive(Debug)]
pub enum CliError {
    /// Verification found a failing check, or a computation broke down.
    Failed(Option<anyhow::Error>),
    Usage(anyhow::Error),
    Precondition(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Failed(None) => write!(f, "verification failed"),
            CliError::Failed(Some(e)) => write!(f, "{e:#}"),
            CliError::Usage(e) => write!(f, "{e:#}"),
            CliError::Precondition(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Usage(e)
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

fn usage(msg: impl fmt::Display) -> CliError {
    CliError::Usage(anyhow!("{msg}"))
}

fn check_n(n: usize) -> CliResult {
    if n < 2 {
        return Err(usage(format!("N must be at least 2, got {n}")));
    }
    Ok(())
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> CliResult {
    let text = serde_json::to_string(value).context("serializing output")?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)
}

/// Parses a unimodular matrix document of the expected size.
pub fn load_change(path: &Path, n: usize) -> CliResult<BasisChange> {
    check_n(n)?;
    let doc: MatrixDocument = read_json(path)?;
    if doc.n != n {
        return Err(usage(format!(
            "{} holds an n = {} matrix, expected {n}",
            path.display(),
            doc.n
        )));
    }
    let m = doc.to_matrix()?;
    BasisChange::new(m).map_err(|e| match e {
        Error::NotUnimodular { .. } | Error::Singular => CliError::Precondition(e.into()),
        other => CliError::Usage(other.into()),
    })
}

fn load_basis(basis: Option<&Path>, n: usize) -> CliResult<HermBasis> {
    match basis {
        None => Ok(standard_herm_basis(n).map_err(|e| CliError::Usage(e.into()))?),
        Some(path) => {
            let doc: BasisDocument = read_json(path)?;
            if doc.n != n {
                return Err(usage(format!(
                    "{} holds an n = {} basis, expected {n}",
                    path.display(),
                    doc.n
                )));
            }
            Ok(doc.to_basis()?)
        }
    }
}

pub fn gen_basis(n: usize, out: &Path) -> CliResult {
    check_n(n)?;
    let basis = standard_herm_basis(n).map_err(|e| CliError::Usage(e.into()))?;
    write_json(&BasisDocument::from_basis(&basis, BASIS_ID_GELLMANN), out)
}

pub fn map(n: usize, input: &Path, basis: Option<&Path>, stdout: &mut impl Write) -> CliResult {
    let change = load_change(input, n)?;
    let basis = load_basis(basis, n)?;
    let l = epimorphism(&change, &basis).map_err(|e| CliError::Precondition(e.into()))?;
    let text = serde_json::to_string(&FLDocument::from_fl(&l)).context("serializing")?;
    writeln!(stdout, "{text}").context("writing output")?;
    Ok(())
}

pub fn metric(n: usize, out: &Path) -> CliResult {
    if !(2..=METRIC_MAX_N).contains(&n) {
        return Err(usage(format!(
            "metric supports N in 2..={METRIC_MAX_N}, got {n}"
        )));
    }
    let basis = standard_herm_basis(n).map_err(|e| CliError::Usage(e.into()))?;
    let g = metric_coefficients(&basis).map_err(|e| CliError::Failed(Some(e.into())))?;
    write_json(&MetricDocument::from_metric(&g, BASIS_ID_GELLMANN), out)
}

pub fn kernel(n: usize, input: &Path, basis: Option<&Path>, stdout: &mut impl Write) -> CliResult {
    let change = load_change(input, n)?;
    let basis = load_basis(basis, n)?;
    let inside = is_in_kernel(&change, &basis).map_err(|e| CliError::Precondition(e.into()))?;
    writeln!(stdout, "kernel: {inside}").context("writing output")?;
    Ok(())
}

pub fn verify(max_n: usize, seed: u64, samples: usize, stdout: &mut impl Write) -> CliResult {
    if !(verify::MIN_N..=verify::MAX_N).contains(&max_n) {
        return Err(usage(format!(
            "--max-n must be in {}..={}, got {max_n}",
            verify::MIN_N,
            verify::MAX_N
        )));
    }
    if samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    let report = verify::run(&VerifyConfig {
        max_n,
        seed,
        samples,
    })
    .map_err(|e| CliError::Failed(Some(e.into())))?;
    writeln!(stdout, "{report}").context("writing output")?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::Failed(None))
    }
}

/// Evaluates a stored metric against `det` on random Hermitian matrices and
/// returns the worst relative deviation.
pub fn spot_check_metric(doc: &MetricDocument, seed: u64, samples: usize) -> CliResult<f64> {
    if doc.basis_id != BASIS_ID_GELLMANN {
        return Err(usage(format!("unknown basis id {:?}", doc.basis_id)));
    }
    let metric = doc.to_metric()?;
    let basis = standard_herm_basis(doc.n).map_err(|e| CliError::Usage(e.into()))?;
    let mut rng = finspinor::sampling::rng(seed);
    let mut worst = 0.0_f64;
    for _ in 0..samples {
        let x = finspinor::HermVector::new(finspinor::sampling::random_hermitian(doc.n, &mut rng))
            .map_err(|e| CliError::Usage(e.into()))?;
        let det = finspinor::det_invariant(&x).map_err(|e| CliError::Usage(e.into()))?;
        let comps = basis
            .components(&x)
            .map_err(|e| CliError::Usage(e.into()))?;
        let f = finsler_power(&comps, &metric).map_err(|e| CliError::Usage(e.into()))?;
        worst = worst.max((f - det).abs() / det.abs().max(1.0));
    }
    Ok(worst)
}

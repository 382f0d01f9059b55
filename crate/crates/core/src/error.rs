use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Bad shapes, dimensions, index ranges or symmetry violations.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix is not unimodular: det = {re} + {im}i")]
    NotUnimodular { re: f64, im: f64 },

    #[error("matrix is singular")]
    Singular,

    #[error("the given matrices do not form a basis of Herm(N)")]
    NotABasis,

    /// A quantity that must be real came out with a large imaginary part.
    /// In practice this means an index-ordering convention is violated.
    #[error("imaginary residue {residue:e} exceeds tolerance {tol:e}")]
    Convention { residue: f64, tol: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

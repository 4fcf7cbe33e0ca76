use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A value outside the domain of a numeric function (e.g. `a <= 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters outside the admissible range of an operation.
    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    /// The recursive route was asked for an entry whose inputs are not cached yet.
    #[error("coefficient a_({l},{s}) required but not present in the cache")]
    MissingDependency { l: usize, s: usize },

    /// The triangular system for the coefficient matrix has a non-invertible pivot.
    #[error("singular pivot while solving for derivative order {order}")]
    Singular { order: usize },

    /// A square root or inverse that must be a monomial in `a` is not one.
    #[error("expected a monomial in a, got {0}")]
    NotMonomial(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            detail: detail.into(),
        }
    }
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("truncation at dim {dim} loses weight {leakage:.3e} (tolerance {tolerance:.3e})")]
    Truncation {
        dim: usize,
        leakage: f64,
        tolerance: f64,
    },

    #[error(
        "phase quadrature did not converge: order {order} -> {refined} changed an entry by \
         {change:.3e} (tolerance {tolerance:.3e})"
    )]
    Convergence {
        order: usize,
        refined: usize,
        change: f64,
        tolerance: f64,
    },

    #[error("undefined value: {0}")]
    Undefined(&'static str),
}

impl Error {
    /// True for failures of the numerics (truncation, quadrature) as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Truncation { .. } | Error::Convergence { .. })
    }
}

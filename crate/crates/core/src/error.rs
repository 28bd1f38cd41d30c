use thiserror::Error;

/// Errors raised by the exact kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("cannot invert a series that is zero up to precision {precision}")]
    DivisionByZeroSeries { precision: i64 },
    #[error("operation is undefined on the zero operator")]
    ZeroOperator,
    #[error("point is not rational (non-rational residual factor of degree {residual_degree})")]
    NonRationalPoint { residual_degree: usize },
    #[error("finite germ points must be nonzero")]
    ZeroPoint,
    #[error("expected a {expected} polygon, found {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("microdifference operators use different derivations")]
    TagMismatch,
    #[error("truncation windows do not overlap")]
    EmptyWindow,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("coefficient of exponent {exponent} lies beyond certified precision {precision}")]
    BeyondPrecision { exponent: i64, precision: i64 },
    #[error("coefficient {0} is not a power series in u")]
    NotIntegral(String),
    #[error("{0} is not invertible")]
    NotInvertible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

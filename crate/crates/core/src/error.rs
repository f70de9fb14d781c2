use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("negative argument {0} where t >= 0 is required")]
    NegativeArgument(f64),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("unknown modulus class `{0}` (expected Phi, P or Omega)")]
    UnknownClass(String),

    #[error("curve is not in class {class}: clause `{clause}` fails at t = {t}")]
    ClassViolation {
        class: &'static str,
        clause: &'static str,
        t: f64,
    },

    #[error("curve is not regular: {0}; apply regularize_rho / regularize_omega first")]
    NotRegularized(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("invalid point set: {0}")]
    InvalidPoints(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown block index {0}")]
    UnknownBlock(usize),

    #[error("point {index} lies outside the planned annulus range (k = {k})")]
    OutsidePlan { index: usize, k: i32 },

    #[error("no pair of points falls in the requested range")]
    EmptyRange,

    #[error("malformed input: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn curve(msg: impl Into<String>) -> Self {
        Error::InvalidCurve(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

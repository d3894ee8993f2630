use thiserror::Error;

/// Failures reported by the library. Every variant carries a stable
/// machine-readable code (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroInput,
    #[error("vector is not admissible: {0}")]
    NonAdmissible(String),
    #[error("specialization has alpha = sum(z) = 0")]
    ZeroAlpha,
    #[error("operation requires a knot (gcd(p,q) = 1), got d = {d}")]
    LinkCase { d: u64 },
    #[error("operation requires a link (gcd(p,q) >= 2)")]
    KnotCase,
    #[error("point lies within {tol:e} of a pole")]
    NearPole { tol: f64 },
    #[error("root of unity of order {order} is not a pole (order does not divide {period})")]
    NotAPole { order: u64, period: u64 },
    #[error("quadrature sample within {tol:e} of a zero; change the grid")]
    NonFinite { tol: f64 },
    #[error("tower contains an infinite homology group at level n = {level}")]
    NotApplicable { level: u32 },
    #[error("formula mismatch: {0}")]
    FormulaMismatch(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
            Error::NotDivisible => "NOT_DIVISIBLE",
            Error::DivByZero => "DIV_BY_ZERO",
            Error::ZeroInput => "ZERO_INPUT",
            Error::NonAdmissible(_) => "NON_ADMISSIBLE",
            Error::ZeroAlpha => "ZERO_ALPHA",
            Error::LinkCase { .. } => "LINK_CASE",
            Error::KnotCase => "KNOT_CASE",
            Error::NearPole { .. } => "NEAR_POLE",
            Error::NotAPole { .. } => "NOT_A_POLE",
            Error::NonFinite { .. } => "NON_FINITE",
            Error::NotApplicable { .. } => "NOT_APPLICABLE",
            Error::FormulaMismatch(_) => "FORMULA_MISMATCH",
            Error::Internal(_) => "INTERNAL",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the number-field, special-function and summation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("d = {0} is not squarefree")]
    NonSquarefree(i64),
    #[error("d = {0} is not an admissible quadratic parameter (must differ from 0 and 1)")]
    DisallowedD(i64),
    #[error("the zero ideal is not a fractional ideal")]
    ZeroIdeal,
    #[error("valuation of zero is undefined")]
    ZeroInput,
    #[error("ideal is not integral")]
    NonIntegralIdeal,
    #[error("factorization overflow: {0}")]
    FactorizationOverflow(String),
    #[error("lattice region is unbounded")]
    RegionUnbounded,
    #[error("character argument must be nonzero")]
    ZeroArgument,
    #[error("Hensel lifting failed for p = {0}")]
    HenselFailure(u64),
    #[error("gamma function pole at {0}")]
    PoleAtNonPositiveInteger(f64),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("order {0} outside the supported envelope |nu| <= 4")]
    OrderOutOfEnvelope(f64),
    #[error("coordinate {0} of the point is zero")]
    ZeroCoordinate(usize),
    #[error("pole: {0}")]
    Pole(String),
    #[error("zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("quadrature budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("dual-sum truncation budget exceeded at radius {radius} (tail bound {tail_bound:e})")]
    TruncationBudgetExceeded { radius: f64, tail_bound: f64 },
    #[error("enumeration cap exceeded ({0} points)")]
    EnumerationCapExceeded(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, for messages that should name the failure class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonSquarefree(_) => "NonSquarefree",
            Error::DisallowedD(_) => "DisallowedD",
            Error::ZeroIdeal => "ZeroIdeal",
            Error::ZeroInput => "ZeroInput",
            Error::NonIntegralIdeal => "NonIntegralIdeal",
            Error::FactorizationOverflow(_) => "FactorizationOverflow",
            Error::RegionUnbounded => "RegionUnbounded",
            Error::ZeroArgument => "ZeroArgument",
            Error::HenselFailure(_) => "HenselFailure",
            Error::PoleAtNonPositiveInteger(_) => "PoleAtNonPositiveInteger",
            Error::DomainError(_) => "DomainError",
            Error::OrderOutOfEnvelope(_) => "OrderOutOfEnvelope",
            Error::ZeroCoordinate(_) => "ZeroCoordinate",
            Error::Pole(_) => "Pole",
            Error::PoleAtOne => "PoleAtOne",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::TruncationBudgetExceeded { .. } => "TruncationBudgetExceeded",
            Error::EnumerationCapExceeded(_) => "EnumerationCapExceeded",
            Error::Parse(_) => "Parse",
            Error::Config(_) => "Config",
        }
    }

    /// Work limits rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded(_) | Error::TruncationBudgetExceeded { .. } | Error::EnumerationCapExceeded(_)
        )
    }
}

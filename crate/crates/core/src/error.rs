use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A ratio or rate was requested with a zero (or otherwise unusable) denominator.
    #[error("degenerate denominator: {0} must be strictly positive")]
    DegenerateDenominator(&'static str),

    /// An argument violated its domain (negative stock, non-finite value, propensity out of range).
    #[error("invalid input `{field}`: {reason}")]
    InvalidInput { field: &'static str, reason: String },

    /// `s_w * (1 + W/P_w)` evaluated at `P_w = 0`.
    #[error("singular at worker_profit = 0: the implied capitalist propensity is only defined as a limit")]
    Singularity,

    /// Equilibrium ratios are undefined in period `t` (S = 0 or K = 0).
    #[error("degenerate period t={t}: {reason}")]
    DegeneratePeriod { t: usize, reason: &'static str },

    #[error("validation failed for `{field}`: {reason}")]
    Validation { field: String, reason: String },

    #[error("malformed document at line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("malformed trajectory CSV at line {line}: {message}")]
    Csv { line: usize, message: String },

    #[error("contract run ended with more capital than the unconstrained run ({contract} > {unconstrained})")]
    GrowthReductionViolated { contract: f64, unconstrained: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

/// Rejects NaN, infinities and negative values.
pub(crate) fn non_negative(field: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::invalid(
            field,
            format!("must be finite, got {value}"),
        ));
    }
    if value < 0.0 {
        return Err(Error::invalid(
            field,
            format!("must be non-negative, got {value}"),
        ));
    }
    Ok(value)
}

/// Rejects NaN, infinities, zero and negative values.
pub(crate) fn positive(field: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::invalid(
            field,
            format!("must be finite, got {value}"),
        ));
    }
    if value <= 0.0 {
        return Err(Error::DegenerateDenominator(field));
    }
    Ok(value)
}

use serde::{Deserialize, Serialize};

use crate::contract::ContractRatio;
use crate::error::{Error, Result};
use crate::model::Propensities;

/// An exogenous per-period sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Series {
    Constant(f64),
    /// `initial * ratio^t`
    Geometric {
        initial: f64,
        ratio: f64,
    },
    /// One value per period; length must equal the horizon.
    List(Vec<f64>),
}

impl Series {
    /// Value in period `t`. Lists are indexed directly; callers validate the length.
    pub fn at(&self, t: usize) -> f64 {
        match self {
            Series::Constant(v) => *v,
            Series::Geometric { initial, ratio } => {
                initial * ratio.powi(i32::try_from(t).unwrap_or(i32::MAX))
            }
            Series::List(values) => values[t],
        }
    }

    pub(crate) fn validate(
        &self,
        field: &str,
        horizon: usize,
        strictly_positive: bool,
    ) -> Result<()> {
        if let Series::List(values) = self {
            if values.len() != horizon {
                return Err(Error::validation(
                    field,
                    format!("list has {} entries, horizon is {horizon}", values.len()),
                ));
            }
        }
        if let Series::Geometric { ratio, .. } = self {
            if !(ratio.is_finite() && *ratio > 0.0) {
                return Err(Error::validation(
                    field,
                    format!("geometric ratio must be positive, got {ratio}"),
                ));
            }
        }
        for t in 0..horizon {
            let v = self.at(t);
            if !v.is_finite() {
                return Err(Error::validation(
                    field,
                    format!("value at t={t} is not finite"),
                ));
            }
            if strictly_positive && v <= 0.0 {
                return Err(Error::validation(
                    field,
                    format!("value at t={t} must be positive, got {v}"),
                ));
            }
            if v < 0.0 {
                return Err(Error::validation(
                    field,
                    format!("value at t={t} must be non-negative, got {v}"),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SavingsMode {
    /// Every class saves its full capacity.
    Unconstrained,
    /// Savings are restricted to the contracted ratio each period.
    Contract(ContractRatio),
}

/// A complete simulation run. Investment always equals saving.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub horizon: usize,
    pub initial_worker_capital: f64,
    pub initial_capitalist_capital: f64,
    pub profit_rate: Series,
    pub wage: Series,
    pub propensities: Propensities,
    pub mode: SavingsMode,
    /// Unsaved capacity re-enters the same class's capacity next period.
    pub carryover: bool,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.horizon < 1 {
            return Err(Error::validation("horizon", "must be at least 1"));
        }
        stock("initial_K_w", self.initial_worker_capital)?;
        stock("initial_K_c", self.initial_capitalist_capital)?;
        self.profit_rate
            .validate("profit_rate_path", self.horizon, false)?;
        self.wage.validate("wage_path", self.horizon, false)?;
        // Propensities and ContractRatio validate on construction.
        Ok(())
    }

    pub fn with_mode(&self, mode: SavingsMode) -> Self {
        ScenarioConfig {
            mode,
            ..self.clone()
        }
    }
}

fn stock(field: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(Error::validation(
            field,
            format!("must be finite and non-negative, got {v}"),
        ));
    }
    Ok(())
}

/// Savings flows prescribed directly as `S_w = C f(t)`, `S_c = D f(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProportionalSavingsSpec {
    pub worker_scale: f64,
    pub capitalist_scale: f64,
    pub multiplier: Series,
}

impl ProportionalSavingsSpec {
    /// `E = C + D`
    pub fn total_scale(&self) -> f64 {
        self.worker_scale + self.capitalist_scale
    }

    pub fn validate(&self, horizon: usize) -> Result<()> {
        stock("C", self.worker_scale)?;
        stock("D", self.capitalist_scale)?;
        self.multiplier.validate("f", horizon, true)
    }
}

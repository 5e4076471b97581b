//! Single-period distribution algebra for a two-class economy.
//!
//! Workers earn a wage `W` plus profit `P_w` on the capital they own; capitalists
//! earn profit `P_c`. Each class saves a fixed fraction of its income. Everything
//! here is a pure function of its arguments; rates are per-period fractions and
//! no currency unit is assumed, so multiplying every currency input by the same
//! positive factor leaves every rate unchanged.

use serde::{Deserialize, Serialize};

use crate::error::{non_negative, positive, Error, Result};

/// One period's stocks and flows.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EconomyState {
    pub wage: f64,
    pub worker_profit: f64,
    pub capitalist_profit: f64,
    pub worker_capital: f64,
    pub capitalist_capital: f64,
    pub investment: f64,
}

impl EconomyState {
    pub fn validate(&self) -> Result<()> {
        non_negative("wage", self.wage)?;
        non_negative("worker_profit", self.worker_profit)?;
        non_negative("capitalist_profit", self.capitalist_profit)?;
        non_negative("worker_capital", self.worker_capital)?;
        non_negative("capitalist_capital", self.capitalist_capital)?;
        non_negative("investment", self.investment)?;
        Ok(())
    }

    /// `P = P_c + P_w`
    pub fn total_profit(&self) -> f64 {
        self.capitalist_profit + self.worker_profit
    }

    /// `K = K_w + K_c`
    pub fn total_capital(&self) -> f64 {
        self.worker_capital + self.capitalist_capital
    }

    /// Worker income, wage plus profit share.
    pub fn worker_income(&self) -> f64 {
        self.worker_profit + self.wage
    }
}

/// Saving propensities of workers (`s_w`) and capitalists (`s_c`).
///
/// `0 <= s_w <= 1` and `0 < s_c <= 1`. No ordering between the two is imposed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Propensities {
    worker: f64,
    capitalist: f64,
}

impl Propensities {
    pub fn new(worker: f64, capitalist: f64) -> Result<Self> {
        if !(worker.is_finite() && (0.0..=1.0).contains(&worker)) {
            return Err(Error::invalid(
                "s_w",
                format!("must lie in [0, 1], got {worker}"),
            ));
        }
        if !(capitalist.is_finite() && capitalist > 0.0 && capitalist <= 1.0) {
            return Err(Error::invalid(
                "s_c",
                format!("must lie in (0, 1], got {capitalist}"),
            ));
        }
        Ok(Propensities { worker, capitalist })
    }

    pub fn worker(&self) -> f64 {
        self.worker
    }

    pub fn capitalist(&self) -> f64 {
        self.capitalist
    }
}

/// Class savings. The total is always recomputed from the parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SavingsBreakdown {
    pub worker: f64,
    pub capitalist: f64,
}

impl SavingsBreakdown {
    pub fn total(&self) -> f64 {
        self.capitalist + self.worker
    }
}

/// Why a returned value should not be taken at face value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Warning {
    /// `I < s_w * W`: the Kaldor closure leaves negative profit.
    NegativeProfit,
    /// The implied propensity exceeds 1, so no admissible value exists.
    InfeasiblePropensity,
}

/// A raw value together with an optional warning. The value is never clamped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Flagged {
    pub value: f64,
    pub warning: Option<Warning>,
}

impl Flagged {
    pub fn is_ok(&self) -> bool {
        self.warning.is_none()
    }
}

/// `S_c = s_c P_c`, `S_w = s_w (P_w + W)`.
pub fn savings(state: &EconomyState, props: &Propensities) -> SavingsBreakdown {
    SavingsBreakdown {
        worker: props.worker * state.worker_income(),
        capitalist: props.capitalist * state.capitalist_profit,
    }
}

/// Signed residual `S_w/S - K_w/K` of the savings-share / capital-share condition.
pub fn pasinetti_condition_residual(
    state: &EconomyState,
    savings: &SavingsBreakdown,
) -> Result<f64> {
    let s = savings.total();
    if !(s > 0.0) {
        return Err(Error::DegenerateDenominator("total saving S"));
    }
    let k = state.total_capital();
    if !(k > 0.0) {
        return Err(Error::DegenerateDenominator("total capital K"));
    }
    Ok(savings.worker / s - state.worker_capital / k)
}

/// `(P_w/K_w - P/K, P_c/K_c - P/K)`; both zero iff the profit rate is uniform.
pub fn uniform_profit_rate_residual(state: &EconomyState) -> Result<(f64, f64)> {
    if !(state.worker_capital > 0.0) {
        return Err(Error::DegenerateDenominator("worker capital K_w"));
    }
    if !(state.capitalist_capital > 0.0) {
        return Err(Error::DegenerateDenominator("capitalist capital K_c"));
    }
    let overall = state.total_profit() / state.total_capital();
    Ok((
        state.worker_profit / state.worker_capital - overall,
        state.capitalist_profit / state.capitalist_capital - overall,
    ))
}

/// `P/K = (1/s_c)(I/K)`, the profit rate that leaves `s_w` out entirely.
pub fn pasinetti_profit_rate(s_c: f64, investment: f64, capital: f64) -> Result<f64> {
    let s_c = positive("s_c", s_c)?;
    let investment = non_negative("investment", investment)?;
    let capital = positive("capital", capital)?;
    Ok((1.0 / s_c) * (investment / capital))
}

/// The same profit rate written through the worker side,
/// `P/K = (1/s_w) (P_w / (W + P_w)) (I/K)`. Only defined for `P_w > 0`.
pub fn pasinetti_profit_rate_alt(
    s_w: f64,
    worker_profit: f64,
    wage: f64,
    investment: f64,
    capital: f64,
) -> Result<f64> {
    let s_w = positive("s_w", s_w)?;
    let worker_profit = positive("worker_profit", worker_profit)?;
    let wage = non_negative("wage", wage)?;
    let investment = non_negative("investment", investment)?;
    let capital = positive("capital", capital)?;
    Ok((1.0 / s_w) * (worker_profit / (wage + worker_profit)) * (investment / capital))
}

/// Kaldor's profit rate with workers owning no capital, `(1/s_c)(I - s_w W)/K`.
///
/// When `I < s_w W` the (negative) value is returned with [`Warning::NegativeProfit`].
pub fn kaldor_profit_rate(
    s_c: f64,
    s_w: f64,
    wage: f64,
    investment: f64,
    capital: f64,
) -> Result<Flagged> {
    let s_c = positive("s_c", s_c)?;
    let s_w = non_negative("s_w", s_w)?;
    let wage = non_negative("wage", wage)?;
    let investment = non_negative("investment", investment)?;
    let capital = positive("capital", capital)?;
    let net = investment - s_w * wage;
    Ok(Flagged {
        value: (1.0 / s_c) * (net / capital),
        warning: (net < 0.0).then_some(Warning::NegativeProfit),
    })
}

/// Kaldor's form with `s_w = 0`. Same formula as [`pasinetti_profit_rate`], kept
/// under its own name so the coincidence of the two theories can be asserted.
pub fn kaldor_profit_rate_classic(s_c: f64, investment: f64, capital: f64) -> Result<f64> {
    let s_c = positive("s_c", s_c)?;
    let investment = non_negative("investment", investment)?;
    let capital = positive("capital", capital)?;
    Ok((1.0 / s_c) * (investment / capital))
}

// Both derivations of the propensity constraint (equating the two final
// equations, and imposing S_w/S_c = P_w/P_c) end at the same function of
// (s_w, W, P_w). They share this one evaluation so they agree bit for bit.
fn constrained_capitalist_propensity(s_w: f64, wage: f64, worker_profit: f64) -> Result<Flagged> {
    if !(s_w.is_finite() && (0.0..=1.0).contains(&s_w)) {
        return Err(Error::invalid(
            "s_w",
            format!("must lie in [0, 1], got {s_w}"),
        ));
    }
    let wage = non_negative("wage", wage)?;
    let worker_profit = non_negative("worker_profit", worker_profit)?;
    if worker_profit == 0.0 {
        return Err(Error::Singularity);
    }
    let value = s_w * (1.0 + wage / worker_profit);
    Ok(Flagged {
        value,
        warning: (value > 1.0).then_some(Warning::InfeasiblePropensity),
    })
}

/// `s_c = s_w (1 + W/P_w)`: the capitalist propensity forced on the economy
/// once savings shares are tied to capital shares.
///
/// `P_w = 0` is an error; the behaviour near zero is a limit, see
/// [`implied_worker_propensity`]. Values above 1 are flagged, not clamped.
pub fn implied_capitalist_propensity(s_w: f64, wage: f64, worker_profit: f64) -> Result<Flagged> {
    constrained_capitalist_propensity(s_w, wage, worker_profit)
}

/// `s_c = s_w (W + P_w)/P_w`, the constraint reached from a fixed contract
/// ratio `S_w/S_c = P_w/P_c`. Identical to [`implied_capitalist_propensity`].
pub fn contract_capitalist_propensity(s_w: f64, wage: f64, worker_profit: f64) -> Result<Flagged> {
    constrained_capitalist_propensity(s_w, wage, worker_profit)
}

/// Inverse of the constraint: `s_w = s_c P_w / (W + P_w)`.
pub fn implied_worker_propensity(s_c: f64, wage: f64, worker_profit: f64) -> Result<f64> {
    let s_c = non_negative("s_c", s_c)?;
    let wage = non_negative("wage", wage)?;
    let worker_profit = non_negative("worker_profit", worker_profit)?;
    let income = wage + worker_profit;
    if income == 0.0 {
        return Err(Error::DegenerateDenominator("worker income W + P_w"));
    }
    Ok(s_c * worker_profit / income)
}

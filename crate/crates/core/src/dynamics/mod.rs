//! Discrete-time capital accumulation.
//!
//! Time runs in unit periods. In period `t` the opening stocks earn a uniform
//! profit rate, each class forms its full capacity to save, and the (possibly
//! restricted) savings are invested in the same period:
//!
//! ```text
//! P_x(t)   = r(t) K_x(t-1)
//! K_x(t)   = K_x(t-1) + S_x(t)          K_x(-1) = initial stock
//! ```
//!
//! so `K_x(t) = K_x(-1) + sum_{u<=t} S_x(u)`, the discrete counterpart of
//! integrating savings up to `t`. A [`PeriodRecord`] reports the closing stocks
//! of its period together with that period's flows; the equilibrium residual
//! compares the period's savings share with the closing capital share.

mod config;
mod proportional;

pub use config::{ProportionalSavingsSpec, SavingsMode, ScenarioConfig, Series};
pub use proportional::simulate_proportional;

use serde::{Deserialize, Serialize};

use crate::contract::{restrict, SavingsCapacity};
use crate::error::{Error, Result};
use crate::model::Propensities;

/// One period of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodRecord {
    pub t: usize,
    /// Closing stocks.
    pub worker_capital: f64,
    pub capitalist_capital: f64,
    pub capital: f64,
    pub wage: f64,
    pub worker_profit: f64,
    pub capitalist_profit: f64,
    pub profit: f64,
    pub worker_fcs: f64,
    pub capitalist_fcs: f64,
    pub worker_saving: f64,
    pub capitalist_saving: f64,
    pub saving: f64,
    pub worker_unsaved: f64,
    pub capitalist_unsaved: f64,
    pub unsaved: f64,
    /// `K_w / K`, absent when `K = 0`.
    pub ratio_k: Option<f64>,
    /// `S_w / S`, absent when `S = 0`.
    pub ratio_s: Option<f64>,
    /// `ratio_s - ratio_k`, absent when either is.
    pub equilibrium_residual: Option<f64>,
}

impl PeriodRecord {
    /// Stocks at the start of the period (before this period's investment).
    pub fn opening_capital(&self) -> (f64, f64) {
        (
            self.worker_capital - self.worker_saving,
            self.capitalist_capital - self.capitalist_saving,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub records: Vec<PeriodRecord>,
    /// Sum of `US(t)` over all periods.
    pub cumulative_unsaved: f64,
}

impl Trajectory {
    pub(crate) fn from_records(records: Vec<PeriodRecord>) -> Self {
        let cumulative_unsaved = records.iter().map(|r| r.unsaved).sum();
        Trajectory {
            records,
            cumulative_unsaved,
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Total capital after the last period.
    pub fn final_capital(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.capital)
    }

    pub fn unsaved_series(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.unsaved).collect()
    }
}

/// Unsaved amounts waiting to re-enter next period's capacities.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Carry {
    pub worker: f64,
    pub capitalist: f64,
}

/// `P_w = r K_w`, `P_c = r K_c`. The wage plays no part in profits.
pub fn incomes_from_capital(
    worker_capital: f64,
    capitalist_capital: f64,
    rate: f64,
    _wage: f64,
) -> (f64, f64) {
    (rate * worker_capital, rate * capitalist_capital)
}

/// `FCS_w = s_w (W + P_w)`, `FCS_c = s_c P_c`.
pub fn full_capacities(
    props: &Propensities,
    wage: f64,
    worker_profit: f64,
    capitalist_profit: f64,
) -> Result<SavingsCapacity> {
    SavingsCapacity::new(
        props.worker() * (wage + worker_profit),
        props.capitalist() * capitalist_profit,
    )
}

fn advance(
    t: usize,
    opening: (f64, f64),
    carry: Carry,
    config: &ScenarioConfig,
) -> Result<(PeriodRecord, Carry)> {
    let rate = config.profit_rate.at(t);
    let wage = config.wage.at(t);
    let (worker_profit, capitalist_profit) = incomes_from_capital(opening.0, opening.1, rate, wage);
    let base = full_capacities(&config.propensities, wage, worker_profit, capitalist_profit)?;
    let cap = SavingsCapacity::new(
        base.worker() + carry.worker,
        base.capitalist() + carry.capitalist,
    )?;

    let (worker_saving, capitalist_saving, worker_unsaved, capitalist_unsaved) = match config.mode {
        SavingsMode::Unconstrained => (cap.worker(), cap.capitalist(), 0.0, 0.0),
        SavingsMode::Contract(ratio) => {
            let out = restrict(&cap, ratio);
            (
                out.worker_actual,
                out.capitalist_actual,
                out.worker_unsaved,
                out.capitalist_unsaved,
            )
        }
    };

    let record = build_record(
        t,
        opening,
        wage,
        (worker_profit, capitalist_profit),
        (cap.worker(), cap.capitalist()),
        (worker_saving, capitalist_saving),
        (worker_unsaved, capitalist_unsaved),
    );
    let next = if config.carryover {
        Carry {
            worker: worker_unsaved,
            capitalist: capitalist_unsaved,
        }
    } else {
        Carry::default()
    };
    Ok((record, next))
}

pub(crate) fn build_record(
    t: usize,
    opening: (f64, f64),
    wage: f64,
    profits: (f64, f64),
    fcs: (f64, f64),
    saving: (f64, f64),
    unsaved: (f64, f64),
) -> PeriodRecord {
    let worker_capital = opening.0 + saving.0;
    let capitalist_capital = opening.1 + saving.1;
    let capital = worker_capital + capitalist_capital;
    let total_saving = saving.0 + saving.1;
    let ratio_k = (capital > 0.0).then(|| worker_capital / capital);
    let ratio_s = (total_saving > 0.0).then(|| saving.0 / total_saving);
    let equilibrium_residual = match (ratio_s, ratio_k) {
        (Some(s), Some(k)) => Some(s - k),
        _ => None,
    };
    PeriodRecord {
        t,
        worker_capital,
        capitalist_capital,
        capital,
        wage,
        worker_profit: profits.0,
        capitalist_profit: profits.1,
        profit: profits.0 + profits.1,
        worker_fcs: fcs.0,
        capitalist_fcs: fcs.1,
        worker_saving: saving.0,
        capitalist_saving: saving.1,
        saving: total_saving,
        worker_unsaved: unsaved.0,
        capitalist_unsaved: unsaved.1,
        unsaved: unsaved.0 + unsaved.1,
        ratio_k,
        ratio_s,
        equilibrium_residual,
    }
}

/// Period 0, starting from the configured initial stocks with nothing carried.
pub fn first_period(config: &ScenarioConfig) -> Result<(PeriodRecord, Carry)> {
    config.validate()?;
    advance(
        0,
        (
            config.initial_worker_capital,
            config.initial_capitalist_capital,
        ),
        Carry::default(),
        config,
    )
}

/// The period after `record`: its closing stocks become the opening stocks.
///
/// `carry` is what `record`'s period left unsaved (zero unless carry-over is on).
pub fn step(
    record: &PeriodRecord,
    config: &ScenarioConfig,
    carry: Carry,
) -> Result<(PeriodRecord, Carry)> {
    let t = record.t + 1;
    if t >= config.horizon {
        return Err(Error::validation(
            "horizon",
            format!("period {t} lies beyond the horizon"),
        ));
    }
    advance(
        t,
        (record.worker_capital, record.capitalist_capital),
        carry,
        config,
    )
}

pub fn simulate(config: &ScenarioConfig) -> Result<Trajectory> {
    config.validate()?;
    let mut records = Vec::with_capacity(config.horizon);
    let mut opening = (
        config.initial_worker_capital,
        config.initial_capitalist_capital,
    );
    let mut carry = Carry::default();
    for t in 0..config.horizon {
        let (record, next) = advance(t, opening, carry, config)?;
        opening = (record.worker_capital, record.capitalist_capital);
        carry = next;
        records.push(record);
    }
    Ok(Trajectory::from_records(records))
}

/// `S_w/S - K_w/K` per period; fails on the first period where either share is undefined.
pub fn equilibrium_residual_series(traj: &Trajectory) -> Result<Vec<f64>> {
    traj.records
        .iter()
        .map(|r| {
            if !(r.saving > 0.0) {
                return Err(Error::DegeneratePeriod {
                    t: r.t,
                    reason: "total saving is zero",
                });
            }
            if !(r.capital > 0.0) {
                return Err(Error::DegeneratePeriod {
                    t: r.t,
                    reason: "total capital is zero",
                });
            }
            Ok(r.worker_saving / r.saving - r.worker_capital / r.capital)
        })
        .collect()
}

/// The same scenario run with and without the contract.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthComparison {
    pub unconstrained: Trajectory,
    pub contract: Trajectory,
}

impl GrowthComparison {
    pub fn unconstrained_capital(&self) -> f64 {
        self.unconstrained.final_capital()
    }

    pub fn contract_capital(&self) -> f64 {
        self.contract.final_capital()
    }

    /// Capital forgone by the contract after the last period.
    pub fn gap(&self) -> f64 {
        self.unconstrained_capital() - self.contract_capital()
    }

    pub fn cumulative_unsaved(&self) -> f64 {
        self.contract.cumulative_unsaved
    }

    pub fn unsaved_series(&self) -> Vec<f64> {
        self.contract.unsaved_series()
    }
}

/// Runs a contract-mode scenario both ways and checks the contract run ends
/// with no more capital than the unconstrained one.
pub fn compare_growth(config: &ScenarioConfig) -> Result<GrowthComparison> {
    if !matches!(config.mode, SavingsMode::Contract(_)) {
        return Err(Error::validation(
            "mode",
            "compare requires a contract-mode scenario",
        ));
    }
    let contract = simulate(config)?;
    let unconstrained = simulate(&config.with_mode(SavingsMode::Unconstrained))?;
    let cmp = GrowthComparison {
        unconstrained,
        contract,
    };
    if cmp.contract_capital() > cmp.unconstrained_capital() {
        return Err(Error::GrowthReductionViolated {
            contract: cmp.contract_capital(),
            unconstrained: cmp.unconstrained_capital(),
        });
    }
    Ok(cmp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contract::ContractRatio;

    fn config(mode: SavingsMode, carryover: bool) -> ScenarioConfig {
        ScenarioConfig {
            horizon: 5,
            initial_worker_capital: 0.0,
            initial_capitalist_capital: 100.0,
            profit_rate: Series::Constant(0.0),
            wage: Series::Constant(30.0),
            propensities: Propensities::new(0.1, 0.4).unwrap(),
            mode,
            carryover,
        }
    }

    #[test]
    fn incomes_examples() {
        assert_eq!(incomes_from_capital(20.0, 80.0, 0.1, 30.0), (2.0, 8.0));
        assert_eq!(incomes_from_capital(0.0, 100.0, 0.1, 30.0), (0.0, 10.0));
        assert_eq!(incomes_from_capital(55.0, 66.0, 0.0, 30.0), (0.0, 0.0));
    }

    #[test]
    fn capacity_examples() {
        let c = full_capacities(&Propensities::new(0.1, 0.4).unwrap(), 30.0, 10.0, 40.0).unwrap();
        assert!((c.worker() - 4.0).abs() < 1e-12 && (c.capitalist() - 16.0).abs() < 1e-12);
        let c = full_capacities(&Propensities::new(0.0, 0.4).unwrap(), 30.0, 10.0, 40.0).unwrap();
        assert_eq!(c.worker(), 0.0);
        let c = full_capacities(&Propensities::new(0.05, 0.5).unwrap(), 90.0, 10.0, 40.0).unwrap();
        assert_eq!((c.worker(), c.capitalist()), (5.0, 20.0));
    }

    #[test]
    fn wage_saving_without_profit() {
        let (rec, carry) = first_period(&config(SavingsMode::Unconstrained, false)).unwrap();
        assert_eq!(rec.worker_capital, 3.0);
        assert_eq!(rec.capitalist_capital, 100.0);
        assert_eq!(carry, Carry::default());
    }

    #[test]
    fn contract_step_carries_unsaved() {
        // Capacities (5, 20) under R = 0.2: W = 90, P_w = 10, P_c = 40.
        let cfg = ScenarioConfig {
            horizon: 2,
            initial_worker_capital: 100.0,
            initial_capitalist_capital: 400.0,
            profit_rate: Series::Constant(0.1),
            wage: Series::Constant(90.0),
            propensities: Propensities::new(0.05, 0.5).unwrap(),
            mode: SavingsMode::Contract(ContractRatio::new(0.2).unwrap()),
            carryover: true,
        };
        let (rec, carry) = first_period(&cfg).unwrap();
        assert_eq!((rec.worker_fcs, rec.capitalist_fcs), (5.0, 20.0));
        assert_eq!(rec.worker_capital, 104.0);
        assert_eq!(rec.capitalist_capital, 420.0);
        assert!((carry.worker - 1.0).abs() < 1e-15);
        assert_eq!(carry.capitalist, 0.0);

        let (next, _) = step(&rec, &cfg, carry).unwrap();
        assert_eq!(next.t, 1);
        let expected_fcs_w = 0.05 * (90.0 + 0.1 * 104.0) + carry.worker;
        assert!((next.worker_fcs - expected_fcs_w).abs() < 1e-12);

        let no_carry = ScenarioConfig {
            carryover: false,
            ..cfg
        };
        let (rec, carry) = first_period(&no_carry).unwrap();
        assert!(rec.worker_unsaved > 0.0);
        assert_eq!(carry, Carry::default());
    }

    #[test]
    fn step_past_horizon_is_rejected() {
        let cfg = ScenarioConfig {
            horizon: 1,
            ..config(SavingsMode::Unconstrained, false)
        };
        let (rec, carry) = first_period(&cfg).unwrap();
        assert!(step(&rec, &cfg, carry).is_err());
    }

    #[test]
    fn degenerate_period_is_reported() {
        let mut cfg = config(SavingsMode::Unconstrained, false);
        cfg.wage = Series::List(vec![30.0, 30.0, 0.0, 30.0, 30.0]);
        let traj = simulate(&cfg).unwrap();
        match equilibrium_residual_series(&traj) {
            Err(Error::DegeneratePeriod { t, .. }) => assert_eq!(t, 2),
            other => panic!("expected degenerate period, got {other:?}"),
        }
    }

    #[test]
    fn kaldor_corner_residual_positive() {
        let mut cfg = config(SavingsMode::Unconstrained, false);
        cfg.profit_rate = Series::Constant(0.05);
        let traj = simulate(&cfg).unwrap();
        let res = equilibrium_residual_series(&traj).unwrap();
        assert!(res[0] > 0.0);
    }

    #[test]
    fn compare_requires_contract_mode() {
        assert!(compare_growth(&config(SavingsMode::Unconstrained, false)).is_err());
    }
}

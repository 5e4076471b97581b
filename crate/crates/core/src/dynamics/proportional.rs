use super::{build_record, ProportionalSavingsSpec, Trajectory};
use crate::error::{Error, Result};

/// Accumulates capital from savings prescribed directly as `C f(t)` and
/// `D f(t)`, bypassing incomes. Wage and profit columns are zero; capacities
/// equal savings and nothing is unsaved.
pub fn simulate_proportional(
    spec: &ProportionalSavingsSpec,
    horizon: usize,
    initial_worker_capital: f64,
    initial_capitalist_capital: f64,
) -> Result<Trajectory> {
    if horizon < 1 {
        return Err(Error::validation("horizon", "must be at least 1"));
    }
    for (field, v) in [
        ("initial_K_w", initial_worker_capital),
        ("initial_K_c", initial_capitalist_capital),
    ] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::validation(
                field,
                format!("must be finite and non-negative, got {v}"),
            ));
        }
    }
    spec.validate(horizon)?;

    let mut opening = (initial_worker_capital, initial_capitalist_capital);
    let mut records = Vec::with_capacity(horizon);
    for t in 0..horizon {
        let f = spec.multiplier.at(t);
        let saving = (spec.worker_scale * f, spec.capitalist_scale * f);
        let record = build_record(t, opening, 0.0, (0.0, 0.0), saving, saving, (0.0, 0.0));
        opening = (record.worker_capital, record.capitalist_capital);
        records.push(record);
    }
    Ok(Trajectory::from_records(records))
}

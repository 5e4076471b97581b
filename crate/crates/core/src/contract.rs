//! Savings under a fixed contract ratio `R = S_w / S_c`.
//!
//! Each class has a full capacity to save (FCS). When the capacity ratio
//! `R_1 = FCS_w / FCS_c` differs from the contracted `R`, the class with the
//! larger relative capacity is held back:
//!
//! ```text
//! M1  = max(R_1 - R, 0)            M2  = max(R - R_1, 0)
//! S_w = FCS_w - FCS_c M1           S_c = FCS_w / (M2 + R_1)
//! US_w = FCS_c M1                  US_c = FCS_c M2 / (M2 + R_1)
//! ```
//!
//! Evaluated as written in f64, `FCS_w - FCS_c M1` cancels catastrophically
//! when `R_1 >> R` (the rounding error of `R_1` is multiplied back up by
//! `FCS_c`). [`restrict`] therefore evaluates, per branch, the closed forms
//! these expressions reduce to:
//!
//! ```text
//! M1 > 0:  S_w = R FCS_c     S_c = FCS_c        US_w = FCS_w - R FCS_c   US_c = 0
//! M2 > 0:  S_w = FCS_w       S_c = FCS_w / R    US_w = 0                 US_c = (R FCS_c - FCS_w) / R
//! ```
//!
//! with the differences taken through a fused multiply-add, so every output is
//! within one or two roundings of the exact value. [`restrict_exact`] evaluates
//! the formulas literally in exact rational arithmetic.

use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{non_negative, Error, Result};

/// Relative width of the band in which `R_1` and `R` count as equal on the f64 path.
pub const RATIO_EQUALITY_TOL: f64 = 1e-12;

/// Full capacities to save, `FCS_w` and `FCS_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SavingsCapacity {
    worker: f64,
    capitalist: f64,
}

impl SavingsCapacity {
    pub fn new(worker: f64, capitalist: f64) -> Result<Self> {
        Ok(SavingsCapacity {
            worker: non_negative("worker_fcs", worker)?,
            capitalist: non_negative("capitalist_fcs", capitalist)?,
        })
    }

    pub fn worker(&self) -> f64 {
        self.worker
    }

    pub fn capitalist(&self) -> f64 {
        self.capitalist
    }
}

/// Contracted ratio `R = S_w / S_c`, finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ContractRatio(f64);

impl ContractRatio {
    pub fn new(r: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::invalid(
                "contract_R",
                format!("must be finite and strictly positive, got {r}"),
            ));
        }
        Ok(ContractRatio(r))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for ContractRatio {
    type Error = Error;

    fn try_from(r: f64) -> Result<Self> {
        ContractRatio::new(r)
    }
}

impl From<ContractRatio> for f64 {
    fn from(r: ContractRatio) -> f64 {
        r.0
    }
}

/// Actual savings and unsaved capacities after restriction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestrictedSavings<T = f64> {
    pub worker_actual: T,
    pub capitalist_actual: T,
    pub worker_unsaved: T,
    pub capitalist_unsaved: T,
    pub total_unsaved: T,
}

impl RestrictedSavings<BigRational> {
    /// Rounds every field to the nearest f64.
    pub fn to_f64(&self) -> RestrictedSavings<f64> {
        RestrictedSavings {
            worker_actual: round(&self.worker_actual),
            capitalist_actual: round(&self.capitalist_actual),
            worker_unsaved: round(&self.worker_unsaved),
            capitalist_unsaved: round(&self.capitalist_unsaved),
            total_unsaved: round(&self.total_unsaved),
        }
    }
}

/// `R_1 = FCS_w / FCS_c`.
pub fn capacity_ratio(cap: &SavingsCapacity) -> Result<f64> {
    if cap.capitalist == 0.0 {
        return Err(Error::DegenerateDenominator("capitalist_fcs"));
    }
    Ok(cap.worker / cap.capitalist)
}

/// `M1 = max(R_1 - R, 0)`, positive when workers would over-save.
pub fn conditional_m1<T: Num + PartialOrd>(r1: T, r: T) -> T {
    positive_part(r1 - r)
}

/// `M2 = max(R - R_1, 0)`, positive when capitalists would over-save.
pub fn conditional_m2<T: Num + PartialOrd>(r1: T, r: T) -> T {
    positive_part(r - r1)
}

fn positive_part<T: Num + PartialOrd>(x: T) -> T {
    if x > T::zero() {
        x
    } else {
        T::zero()
    }
}

/// Restricts the capacities so that actual savings honour `R`.
///
/// Degenerate capacities:
/// - `FCS_c = 0`: nobody saves; the workers' whole capacity is unsaved.
/// - `FCS_w = 0`: `R_1 = 0`, so capitalists are cut to zero as well.
/// - both zero: all outputs zero.
///
/// `R_1` within [`RATIO_EQUALITY_TOL`] (relative) of `R` is treated as equal:
/// nothing is unsaved and `S_c = FCS_w / R_1`, which equals `FCS_c` up to rounding.
pub fn restrict(cap: &SavingsCapacity, contract: ContractRatio) -> RestrictedSavings {
    let (fcs_w, fcs_c, r) = (cap.worker, cap.capitalist, contract.value());
    if fcs_c == 0.0 {
        return RestrictedSavings {
            worker_actual: 0.0,
            capitalist_actual: 0.0,
            worker_unsaved: fcs_w,
            capitalist_unsaved: 0.0,
            total_unsaved: fcs_w,
        };
    }

    // FCS_w - R FCS_c, rounded once; its sign is exact.
    let excess = (-r).mul_add(fcs_c, fcs_w);
    let reference = fcs_w.max(r * fcs_c);
    let (worker_actual, capitalist_actual, worker_unsaved, capitalist_unsaved) =
        if excess.abs() <= RATIO_EQUALITY_TOL * reference {
            (fcs_w, fcs_w / (fcs_w / fcs_c), 0.0, 0.0)
        } else if excess > 0.0 {
            (r * fcs_c, fcs_c, excess, 0.0)
        } else if fcs_w == 0.0 {
            (0.0, 0.0, 0.0, fcs_c)
        } else {
            (fcs_w, fcs_w / r, 0.0, -excess / r)
        };

    RestrictedSavings {
        worker_actual,
        capitalist_actual,
        worker_unsaved,
        capitalist_unsaved,
        total_unsaved: worker_unsaved + capitalist_unsaved,
    }
}

/// Exact rational evaluation with no equality band: `R_1 == R` means equal.
pub fn restrict_exact(
    fcs_w: &BigRational,
    fcs_c: &BigRational,
    r: &BigRational,
) -> Result<RestrictedSavings<BigRational>> {
    if fcs_w.is_negative() {
        return Err(Error::invalid("worker_fcs", "must be non-negative"));
    }
    if fcs_c.is_negative() {
        return Err(Error::invalid("capitalist_fcs", "must be non-negative"));
    }
    if !r.is_positive() {
        return Err(Error::invalid("contract_R", "must be strictly positive"));
    }
    Ok(restrict_kernel(
        fcs_w.clone(),
        fcs_c.clone(),
        r.clone(),
        |a, b| a == b,
    ))
}

fn restrict_kernel<T, F>(fcs_w: T, fcs_c: T, r: T, ratios_equal: F) -> RestrictedSavings<T>
where
    T: Num + PartialOrd + Clone,
    F: FnOnce(&T, &T) -> bool,
{
    if fcs_c.is_zero() {
        return RestrictedSavings {
            worker_actual: T::zero(),
            capitalist_actual: T::zero(),
            worker_unsaved: fcs_w.clone(),
            capitalist_unsaved: T::zero(),
            total_unsaved: fcs_w,
        };
    }

    let r1 = fcs_w.clone() / fcs_c.clone();
    let (m1, m2) = if ratios_equal(&r1, &r) {
        (T::zero(), T::zero())
    } else {
        (
            conditional_m1(r1.clone(), r.clone()),
            conditional_m2(r1.clone(), r),
        )
    };

    let worker_unsaved = fcs_c.clone() * m1;
    let worker_actual = fcs_w.clone() - worker_unsaved.clone();
    let capitalist_actual = fcs_w / (m2.clone() + r1.clone());
    let capitalist_unsaved = fcs_c * m2.clone() / (m2 + r1);
    let total_unsaved = worker_unsaved.clone() + capitalist_unsaved.clone();

    RestrictedSavings {
        worker_actual,
        capitalist_actual,
        worker_unsaved,
        capitalist_unsaved,
        total_unsaved,
    }
}

fn round(x: &BigRational) -> f64 {
    x.to_f64().expect("rational of f64 magnitude")
}

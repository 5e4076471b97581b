//! Self-check suite behind the `verify` and `appendix` commands.
//!
//! Every randomized check draws from a ChaCha8 stream seeded by
//! [`VerifyOptions::seed`], so a failing run can be replayed exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contract::{
    capacity_ratio, conditional_m1, conditional_m2, restrict, restrict_exact, ContractRatio,
    RestrictedSavings, SavingsCapacity,
};
use crate::dynamics::{
    compare_growth, equilibrium_residual_series, simulate, simulate_proportional,
    ProportionalSavingsSpec, SavingsMode, ScenarioConfig, Series,
};
use crate::io::{emit_trajectory, parse_trajectory};
use crate::model::{
    contract_capitalist_propensity, implied_capitalist_propensity, implied_worker_propensity,
    kaldor_profit_rate, kaldor_profit_rate_classic, pasinetti_profit_rate,
    pasinetti_profit_rate_alt, Propensities,
};
use crate::tolerance::{approx_eq, rel_eq, DEFAULT_TOL};

pub const DEFAULT_SEED: u64 = 0x5EED_D157;
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            tol: DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &'static str, failures: Vec<String>, ok_detail: String) {
        let passed = failures.is_empty();
        let detail = if passed {
            ok_detail
        } else {
            format!("{} failure(s); first: {}", failures.len(), failures[0])
        };
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }
}

/// Log-uniform draw on `[lo, hi]`.
pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..=hi.ln())).exp()
}

pub fn run_all(opts: &VerifyOptions) -> Report {
    let mut report = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    for ex in appendix_examples() {
        let failures = if ex.matches() {
            vec![]
        } else {
            vec![ex.to_string()]
        };
        report.push(ex.name, failures, "exact rational match".into());
    }
    check_contract(&mut report, &mut rng, opts);
    check_final_equations(&mut report, &mut rng, opts);
    check_propensity_limits(&mut report);
    check_proportional(&mut report, &mut rng, opts);
    check_growth(&mut report, opts);
    check_stock_flow(&mut report, &mut rng);
    check_csv(&mut report);
    report
}

fn check_contract(report: &mut Report, rng: &mut ChaCha8Rng, opts: &VerifyOptions) {
    let tol = opts.tol;
    let mut ratio = Vec::new();
    let mut conservation = Vec::new();
    let mut one_sided = Vec::new();
    let mut scale = Vec::new();
    let mut idempotent = Vec::new();
    for _ in 0..opts.samples {
        let fcs_w = log_uniform(rng, 1e-6, 1e6);
        let fcs_c = log_uniform(rng, 1e-6, 1e6);
        let r = log_uniform(rng, 1e-3, 1e3);
        let cap = SavingsCapacity::new(fcs_w, fcs_c).expect("positive draw");
        let contract = ContractRatio::new(r).expect("positive draw");
        let out = restrict(&cap, contract);

        if out.capitalist_actual > 0.0 && !rel_eq(out.worker_actual / out.capitalist_actual, r, tol)
        {
            ratio.push(format!(
                "({fcs_w}, {fcs_c}, {r}) -> S_w/S_c = {}",
                out.worker_actual / out.capitalist_actual
            ));
        }
        if !rel_eq(out.worker_actual + out.worker_unsaved, fcs_w, tol)
            || !rel_eq(out.capitalist_actual + out.capitalist_unsaved, fcs_c, tol)
        {
            conservation.push(format!("({fcs_w}, {fcs_c}, {r}) -> {out:?}"));
        }
        if out.worker_unsaved * out.capitalist_unsaved != 0.0 {
            one_sided.push(format!("({fcs_w}, {fcs_c}, {r}) -> {out:?}"));
        }
        let lambda = log_uniform(rng, 1e-6, 1e9);
        let scaled = restrict(
            &SavingsCapacity::new(lambda * fcs_w, lambda * fcs_c).expect("finite"),
            contract,
        );
        if !same_scaled(&scaled, &out, lambda, tol) {
            scale.push(format!("({fcs_w}, {fcs_c}, {r}) x {lambda}"));
        }
        let again = restrict(
            &SavingsCapacity::new(out.worker_actual, out.capitalist_actual).expect("non-negative"),
            contract,
        );
        if !(rel_eq(again.worker_actual, out.worker_actual, tol)
            && rel_eq(again.capitalist_actual, out.capitalist_actual, tol))
        {
            idempotent.push(format!("({fcs_w}, {fcs_c}, {r})"));
        }
    }
    let n = opts.samples;
    report.push(
        "contract ratio enforcement",
        ratio,
        format!("{n} samples, S_w/S_c = R within {tol:e}"),
    );
    report.push(
        "contract conservation",
        conservation,
        format!("{n} samples, S_x + US_x = FCS_x within {tol:e}"),
    );
    report.push(
        "contract one-sided restriction",
        one_sided,
        format!("{n} samples, US_w * US_c = 0"),
    );
    report.push("contract scale invariance", scale, format!("{n} samples"));
    report.push("contract idempotence", idempotent, format!("{n} samples"));
}

fn same_scaled(
    scaled: &RestrictedSavings,
    base: &RestrictedSavings,
    lambda: f64,
    tol: f64,
) -> bool {
    [
        (scaled.worker_actual, base.worker_actual),
        (scaled.capitalist_actual, base.capitalist_actual),
        (scaled.worker_unsaved, base.worker_unsaved),
        (scaled.capitalist_unsaved, base.capitalist_unsaved),
    ]
    .iter()
    .all(|&(s, b)| rel_eq(s, lambda * b, tol))
}

fn check_final_equations(report: &mut Report, rng: &mut ChaCha8Rng, opts: &VerifyOptions) {
    let tol = opts.tol;
    let mut equivalence = Vec::new();
    let mut same_function = Vec::new();
    let mut kaldor = Vec::new();
    let mut round_trip = Vec::new();
    for _ in 0..opts.samples {
        let wage = rng.gen_range(0.0..1e3);
        let p_w = log_uniform(rng, 1e-3, 1e3);
        let s_w = rng.gen_range(1e-3..=1.0);
        let i = log_uniform(rng, 1e-3, 1e3);
        let k = log_uniform(rng, 1e-1, 1e5);

        let s_c = implied_capitalist_propensity(s_w, wage, p_w)
            .expect("P_w > 0")
            .value;
        let direct = pasinetti_profit_rate(s_c, i, k).expect("valid");
        let alt = pasinetti_profit_rate_alt(s_w, p_w, wage, i, k).expect("valid");
        if !rel_eq(direct, alt, tol) {
            equivalence.push(format!(
                "(W={wage}, P_w={p_w}, s_w={s_w}, I={i}, K={k}): {direct} vs {alt}"
            ));
        }
        let via_contract = contract_capitalist_propensity(s_w, wage, p_w)
            .expect("P_w > 0")
            .value;
        if s_c.to_bits() != via_contract.to_bits() {
            same_function.push(format!("(s_w={s_w}, W={wage}, P_w={p_w})"));
        }

        let s_cap = rng.gen_range(1e-3..=1.0);
        let reduced = kaldor_profit_rate(s_cap, 0.0, wage, i, k)
            .expect("valid")
            .value;
        let classic = kaldor_profit_rate_classic(s_cap, i, k).expect("valid");
        if reduced.to_bits() != classic.to_bits() {
            kaldor.push(format!("(s_c={s_cap}, W={wage}, I={i}, K={k})"));
        }

        let s_w_back = implied_worker_propensity(s_cap, wage, p_w).expect("P_w > 0");
        let s_c_back = implied_capitalist_propensity(s_w_back, wage, p_w)
            .expect("P_w > 0")
            .value;
        if !rel_eq(s_c_back, s_cap, tol) {
            round_trip.push(format!("(s_c={s_cap}, W={wage}, P_w={p_w}) -> {s_c_back}"));
        }
    }
    let n = opts.samples;
    report.push(
        "final-equation equivalence",
        equivalence,
        format!("{n} samples within {tol:e}"),
    );
    report.push(
        "constraint derivations agree bitwise",
        same_function,
        format!("{n} samples"),
    );
    report.push("kaldor reduction exact", kaldor, format!("{n} samples"));
    report.push(
        "propensity round trip",
        round_trip,
        format!("{n} samples within {tol:e}"),
    );
}

fn check_propensity_limits(report: &mut Report) {
    let (s_c, wage) = (0.5, 100.0);
    let seq: Vec<f64> = (1..=6)
        .map(|k| implied_worker_propensity(s_c, wage, 10f64.powi(-k)).expect("W > 0"))
        .collect();
    let mut failures = Vec::new();
    if !seq.windows(2).all(|w| w[1] < w[0]) {
        failures.push(format!("not strictly decreasing: {seq:?}"));
    }
    if !(seq[5] < 1e-7 * s_c) {
        failures.push(format!("s_w at P_w = 1e-6 is {}", seq[5]));
    }
    report.push(
        "worker propensity vanishes with P_w",
        failures,
        format!("s_w(1e-6) = {:e}", seq[5]),
    );

    let mut failures = Vec::new();
    let mut prev = f64::INFINITY;
    for w in [0.0, 1.0, 10.0, 100.0, 1e3, 1e4] {
        let s_w = implied_worker_propensity(s_c, w, 10.0).expect("P_w > 0");
        if !(s_w < prev) {
            failures.push(format!("s_w did not fall when W rose to {w}"));
        }
        prev = s_w;
    }
    report.push(
        "higher wage lowers implied s_w",
        failures,
        "W in 0..1e4".into(),
    );
}

fn check_proportional(report: &mut Report, rng: &mut ChaCha8Rng, opts: &VerifyOptions) {
    let horizon = 200;
    let mut worst = 0.0_f64;
    let mut failures = Vec::new();
    for _ in 0..100 {
        let c = rng.gen_range(0.0..10.0);
        let d = rng.gen_range(1e-3..10.0);
        let list: Vec<f64> = (0..horizon).map(|_| log_uniform(rng, 1e-3, 1e3)).collect();
        for f in [
            Series::Constant(1.0),
            Series::Geometric {
                initial: 1.0,
                ratio: 1.05,
            },
            Series::List(list),
        ] {
            let spec = ProportionalSavingsSpec {
                worker_scale: c,
                capitalist_scale: d,
                multiplier: f,
            };
            match simulate_proportional(&spec, horizon, 0.0, 0.0)
                .and_then(|t| equilibrium_residual_series(&t))
            {
                Ok(res) => {
                    let m = res.iter().fold(0.0_f64, |a, r| a.max(r.abs()));
                    worst = worst.max(m);
                    if !(m < opts.tol) {
                        failures.push(format!("C={c}, D={d}: max residual {m:e}"));
                    }
                }
                Err(e) => failures.push(e.to_string()),
            }
        }
    }
    report.push(
        "proportional savings keep K_w/K = S_w/S",
        failures,
        format!("300 runs, max |residual| = {worst:e}"),
    );
}

/// Fixed scenario used to demonstrate the capital shortfall of a binding contract.
pub fn reference_growth_scenario() -> ScenarioConfig {
    ScenarioConfig {
        horizon: 50,
        initial_worker_capital: 100.0,
        initial_capitalist_capital: 1000.0,
        profit_rate: Series::Constant(0.05),
        wage: Series::Constant(100.0),
        propensities: Propensities::new(0.05, 0.5).expect("valid"),
        mode: SavingsMode::Contract(ContractRatio::new(0.2).expect("valid")),
        carryover: true,
    }
}

fn check_growth(report: &mut Report, opts: &VerifyOptions) {
    let cfg = reference_growth_scenario();
    let SavingsMode::Contract(contract) = cfg.mode else {
        unreachable!()
    };
    let mut failures = Vec::new();
    let detail = match compare_growth(&cfg) {
        Ok(cmp) => {
            for (c, u) in cmp.contract.records.iter().zip(&cmp.unconstrained.records) {
                if c.capital > u.capital {
                    failures.push(format!(
                        "t={}: K_contract {} > K_unconstrained {}",
                        c.t, c.capital, u.capital
                    ));
                }
                let cap =
                    SavingsCapacity::new(c.worker_fcs, c.capitalist_fcs).expect("non-negative");
                let r1 = capacity_ratio(&cap).unwrap_or(f64::INFINITY);
                let binding = !approx_eq(r1, contract.value(), opts.tol);
                if binding && !(c.unsaved > 0.0) {
                    failures.push(format!("t={}: R_1 = {r1} but US = {}", c.t, c.unsaved));
                }
            }
            if !(cmp.contract_capital() < cmp.unconstrained_capital()) {
                failures.push("terminal capital not reduced".into());
            }
            format!(
                "K_unconstrained(T) = {}, K_contract(T) = {}, cumulative US = {}",
                cmp.unconstrained_capital(),
                cmp.contract_capital(),
                cmp.cumulative_unsaved()
            )
        }
        Err(e) => {
            failures.push(e.to_string());
            String::new()
        }
    };
    report.push("contract reduces capital growth", failures, detail);
}

fn check_stock_flow(report: &mut Report, rng: &mut ChaCha8Rng) {
    let mut failures = Vec::new();
    let horizon = 10_000;
    let cfg = ScenarioConfig {
        horizon,
        initial_worker_capital: rng.gen_range(0.0..100.0),
        initial_capitalist_capital: rng.gen_range(1.0..1000.0),
        profit_rate: Series::List((0..horizon).map(|_| rng.gen_range(0.0..0.001)).collect()),
        wage: Series::List((0..horizon).map(|_| rng.gen_range(0.0..100.0)).collect()),
        propensities: Propensities::new(rng.gen_range(0.0..0.3), rng.gen_range(0.1..1.0))
            .expect("in range"),
        mode: SavingsMode::Contract(
            ContractRatio::new(rng.gen_range(0.05..2.0)).expect("positive"),
        ),
        carryover: true,
    };
    match simulate(&cfg) {
        Ok(traj) => {
            let (mut sum_w, mut sum_c) = (0.0, 0.0);
            for r in &traj.records {
                sum_w += r.worker_saving;
                sum_c += r.capitalist_saving;
                let kw = cfg.initial_worker_capital + sum_w;
                let kc = cfg.initial_capitalist_capital + sum_c;
                if !rel_eq(r.worker_capital, kw, 1e-9) || !rel_eq(r.capitalist_capital, kc, 1e-9) {
                    failures.push(format!("t={}: stocks drifted from prefix sums", r.t));
                    break;
                }
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    report.push(
        "stock-flow consistency",
        failures,
        format!("{horizon} periods within 1e-9"),
    );
}

fn check_csv(report: &mut Report) {
    let mut failures = Vec::new();
    let mut cfg = reference_growth_scenario();
    cfg.horizon = 20;
    match simulate(&cfg) {
        Ok(traj) => {
            let mut buf = Vec::new();
            if let Err(e) = emit_trajectory(&traj, &mut buf) {
                failures.push(e.to_string());
            } else {
                match parse_trajectory(&String::from_utf8_lossy(&buf)) {
                    Ok(back) if back == traj => {}
                    Ok(_) => failures.push("reparsed trajectory differs".into()),
                    Err(e) => failures.push(e.to_string()),
                }
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    report.push(
        "CSV round trip",
        failures,
        "bit-identical on reparse".into(),
    );
}

/// One worked restriction example with its published outcome.
#[derive(Debug, Clone)]
pub struct AppendixExample {
    pub name: &'static str,
    pub fcs_w: BigRational,
    pub fcs_c: BigRational,
    pub ratio: BigRational,
    /// Expected `(S_w, S_c, US_w, US_c)`.
    pub expected: [BigRational; 4],
    pub computed: RestrictedSavings<BigRational>,
}

impl AppendixExample {
    fn new(name: &'static str, fcs: (i64, i64), ratio: (i64, i64), expected: [i64; 4]) -> Self {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let fcs_w = q(fcs.0, 1);
        let fcs_c = q(fcs.1, 1);
        let ratio = q(ratio.0, ratio.1);
        let computed = restrict_exact(&fcs_w, &fcs_c, &ratio).expect("valid example");
        AppendixExample {
            name,
            fcs_w,
            fcs_c,
            ratio,
            expected: expected.map(|v| q(v, 1)),
            computed,
        }
    }

    fn computed_values(&self) -> [&BigRational; 4] {
        [
            &self.computed.worker_actual,
            &self.computed.capitalist_actual,
            &self.computed.worker_unsaved,
            &self.computed.capitalist_unsaved,
        ]
    }

    pub fn matches(&self) -> bool {
        self.computed_values()
            .iter()
            .zip(&self.expected)
            .all(|(c, e)| *c == e)
    }

    pub fn capacity_ratio(&self) -> BigRational {
        &self.fcs_w / &self.fcs_c
    }
}

impl fmt::Display for AppendixExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r1 = self.capacity_ratio();
        writeln!(
            f,
            "{}: FCS_w={} FCS_c={} R={} R_1={} M1={} M2={}",
            self.name,
            self.fcs_w,
            self.fcs_c,
            self.ratio,
            r1,
            conditional_m1(r1.clone(), self.ratio.clone()),
            conditional_m2(r1.clone(), self.ratio.clone()),
        )?;
        for ((label, c), e) in ["S_w", "S_c", "US_w", "US_c"]
            .iter()
            .zip(self.computed_values())
            .zip(&self.expected)
        {
            let status = if c == e { "ok" } else { "MISMATCH" };
            writeln!(f, "  {label:<4} computed={c} expected={e} {status}")?;
        }
        let [s_w, s_c, us_w, us_c] = self.computed_values();
        writeln!(f, "  S_w={s_w},S_c={s_c},US_w={us_w},US_c={us_c}")
    }
}

/// The two worked examples: workers restricted, then capitalists restricted.
pub fn appendix_examples() -> [AppendixExample; 2] {
    [
        AppendixExample::new("Example 1", (5, 20), (1, 5), [4, 20, 1, 0]),
        AppendixExample::new("Example 2", (4, 20), (1, 4), [4, 16, 0, 4]),
    ]
}

use proptest::prelude::*;

use distdyn::model::{
    contract_capitalist_propensity, implied_capitalist_propensity, implied_worker_propensity,
    kaldor_profit_rate, kaldor_profit_rate_classic, pasinetti_profit_rate,
    pasinetti_profit_rate_alt,
};
use distdyn::tolerance::rel_eq;

const TOL: f64 = 1e-12;

fn log_range(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn both_final_equations_give_one_profit_rate(
        wage in prop_oneof![Just(0.0), log_range(1e-3, 1e6)],
        worker_profit in log_range(1e-3, 1e6),
        s_w in 1e-6..=1.0f64,
        investment in log_range(1e-3, 1e6),
        capital in log_range(1e-3, 1e6),
    ) {
        let s_c = implied_capitalist_propensity(s_w, wage, worker_profit).unwrap().value;
        let via_capitalists = pasinetti_profit_rate(s_c, investment, capital).unwrap();
        let via_workers = pasinetti_profit_rate_alt(s_w, worker_profit, wage, investment, capital).unwrap();
        prop_assert!(rel_eq(via_capitalists, via_workers, TOL), "{} vs {}", via_capitalists, via_workers);
    }

    #[test]
    fn constraint_spellings_agree_bitwise(s_w in 0.0..=1.0f64, wage in 0.0..1e6f64, worker_profit in log_range(1e-6, 1e6)) {
        let a = implied_capitalist_propensity(s_w, wage, worker_profit).unwrap();
        let b = contract_capitalist_propensity(s_w, wage, worker_profit).unwrap();
        prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
        prop_assert_eq!(a.warning, b.warning);
    }

    #[test]
    fn kaldor_without_worker_saving(s_c in 1e-6..=1.0f64, wage in 0.0..1e6f64, investment in 0.0..1e6f64, capital in log_range(1e-3, 1e6)) {
        let general = kaldor_profit_rate(s_c, 0.0, wage, investment, capital).unwrap();
        let classic = kaldor_profit_rate_classic(s_c, investment, capital).unwrap();
        prop_assert_eq!(general.value.to_bits(), classic.to_bits());
        prop_assert!(general.is_ok());
    }

    #[test]
    fn worker_propensity_rises_with_worker_profit(s_c in 1e-3..=1.0f64, wage in log_range(1e-3, 1e6), p in log_range(1e-6, 1e6), bump in 1.001..10.0f64) {
        let lo = implied_worker_propensity(s_c, wage, p).unwrap();
        let hi = implied_worker_propensity(s_c, wage, p * bump).unwrap();
        prop_assert!(hi > lo);
    }

    #[test]
    fn higher_wage_lowers_worker_propensity(s_c in 1e-3..=1.0f64, wage in 0.0..1e6f64, p in log_range(1e-6, 1e6), raise in log_range(1e-3, 1e6)) {
        let before = implied_worker_propensity(s_c, wage, p).unwrap();
        let after = implied_worker_propensity(s_c, wage + raise, p).unwrap();
        prop_assert!(after < before);
    }

    #[test]
    fn propensity_round_trip(s_c in 1e-3..=1.0f64, wage in 0.0..1e6f64, p in log_range(1e-6, 1e6)) {
        let s_w = implied_worker_propensity(s_c, wage, p).unwrap();
        let back = implied_capitalist_propensity(s_w, wage, p).unwrap();
        prop_assert!(rel_eq(back.value, s_c, TOL), "{} vs {}", back.value, s_c);
    }

    #[test]
    fn rates_ignore_the_currency_unit(
        s_w in 1e-3..=1.0f64,
        s_c in 1e-3..=1.0f64,
        wage in log_range(1e-3, 1e3),
        p in log_range(1e-3, 1e3),
        investment in log_range(1e-3, 1e3),
        capital in log_range(1e-3, 1e3),
        lambda in log_range(1e-6, 1e9),
    ) {
        let pairs = [
            (implied_capitalist_propensity(s_w, wage, p).unwrap().value,
             implied_capitalist_propensity(s_w, lambda * wage, lambda * p).unwrap().value),
            (implied_worker_propensity(s_c, wage, p).unwrap(),
             implied_worker_propensity(s_c, lambda * wage, lambda * p).unwrap()),
            (pasinetti_profit_rate(s_c, investment, capital).unwrap(),
             pasinetti_profit_rate(s_c, lambda * investment, lambda * capital).unwrap()),
            (kaldor_profit_rate(s_c, s_w, wage, investment, capital).unwrap().value,
             kaldor_profit_rate(s_c, s_w, lambda * wage, lambda * investment, lambda * capital).unwrap().value),
        ];
        for (a, b) in pairs {
            prop_assert!(rel_eq(a, b, 1e-12) || (a - b).abs() <= 1e-12, "{} vs {}", a, b);
        }
    }
}

#[test]
fn worker_propensity_vanishes_with_worker_profit() {
    let mut previous = f64::INFINITY;
    for k in 0..12 {
        let p = 10f64.powi(-k);
        let s_w = implied_worker_propensity(0.5, 100.0, p).unwrap();
        assert!(s_w < previous);
        previous = s_w;
    }
    assert!(previous < 1e-12);
}

#[test]
fn zero_worker_profit_is_not_evaluated() {
    assert!(implied_capitalist_propensity(0.1, 30.0, 0.0).is_err());
    assert_eq!(implied_worker_propensity(0.4, 30.0, 0.0).unwrap(), 0.0);
}

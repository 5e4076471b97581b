use serde::Deserialize;

use crate::contract::ContractRatio;
use crate::dynamics::{
    simulate_proportional, ProportionalSavingsSpec, SavingsMode, ScenarioConfig, Series, Trajectory,
};
use crate::error::{Error, Result};
use crate::model::Propensities;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    schema_version: u32,
    #[serde(default)]
    scenario: Option<RawScenario>,
    #[serde(default)]
    proportional: Option<RawProportional>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    horizon: usize,
    #[serde(rename = "initial_K_w")]
    initial_k_w: f64,
    #[serde(rename = "initial_K_c")]
    initial_k_c: f64,
    profit_rate_path: Series,
    wage_path: Series,
    propensities: RawPropensities,
    mode: RawMode,
    #[serde(rename = "contract_R", default)]
    contract_r: Option<f64>,
    #[serde(default)]
    carryover: bool,
    #[serde(default)]
    investment_closure: Option<Closure>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPropensities {
    s_w: f64,
    s_c: f64,
}

#[derive(Debug, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
enum RawMode {
    Unconstrained,
    Contract,
}

/// The only closure on offer: investment equals saving.
#[derive(Debug, Deserialize)]
enum Closure {
    #[serde(rename = "S=I")]
    SavingsEqualsInvestment,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProportional {
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "D")]
    d: f64,
    f: Series,
    horizon: usize,
    #[serde(rename = "initial_K_w", default)]
    initial_k_w: f64,
    #[serde(rename = "initial_K_c", default)]
    initial_k_c: f64,
}

/// A proportional-savings run: the flows plus horizon and opening stocks.
#[derive(Debug, Clone, PartialEq)]
pub struct ProportionalRun {
    pub spec: ProportionalSavingsSpec,
    pub horizon: usize,
    pub initial_worker_capital: f64,
    pub initial_capitalist_capital: f64,
}

impl ProportionalRun {
    pub fn simulate(&self) -> Result<Trajectory> {
        simulate_proportional(
            &self.spec,
            self.horizon,
            self.initial_worker_capital,
            self.initial_capitalist_capital,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedScenario {
    Scenario(ScenarioConfig),
    Proportional(ProportionalRun),
}

impl ParsedScenario {
    pub fn simulate(&self) -> Result<Trajectory> {
        match self {
            ParsedScenario::Scenario(cfg) => crate::dynamics::simulate(cfg),
            ParsedScenario::Proportional(run) => run.simulate(),
        }
    }
}

/// Parses and validates a JSON scenario document.
pub fn parse_scenario(text: &[u8]) -> Result<ParsedScenario> {
    let file: ScenarioFile = serde_json::from_slice(text).map_err(|e| Error::Malformed {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(Error::validation(
            "schema_version",
            format!(
                "unsupported version {}, expected {SCHEMA_VERSION}",
                file.schema_version
            ),
        ));
    }
    match (file.scenario, file.proportional) {
        (Some(raw), None) => scenario_config(raw).map(ParsedScenario::Scenario),
        (None, Some(raw)) => proportional_run(raw).map(ParsedScenario::Proportional),
        (Some(_), Some(_)) => Err(Error::validation(
            "scenario",
            "exactly one of `scenario` and `proportional` may be present",
        )),
        (None, None) => Err(Error::validation(
            "scenario",
            "one of `scenario` or `proportional` is required",
        )),
    }
}

fn scenario_config(raw: RawScenario) -> Result<ScenarioConfig> {
    let propensities =
        Propensities::new(raw.propensities.s_w, raw.propensities.s_c).map_err(|e| match e {
            Error::InvalidInput { field, reason } => {
                Error::validation(format!("propensities.{field}"), reason)
            }
            other => other,
        })?;
    let mode = match (raw.mode, raw.contract_r) {
        (RawMode::Contract, Some(r)) => SavingsMode::Contract(
            ContractRatio::new(r).map_err(|e| Error::validation("contract_R", e.to_string()))?,
        ),
        (RawMode::Contract, None) => {
            return Err(Error::validation(
                "contract_R",
                "required when mode is \"contract\"",
            ))
        }
        (RawMode::Unconstrained, Some(_)) => {
            return Err(Error::validation(
                "contract_R",
                "only allowed when mode is \"contract\"",
            ))
        }
        (RawMode::Unconstrained, None) => SavingsMode::Unconstrained,
    };
    // S = I is the only closure; deserialization has already rejected anything else.
    debug_assert!(matches!(
        raw.investment_closure,
        None | Some(Closure::SavingsEqualsInvestment)
    ));
    let config = ScenarioConfig {
        horizon: raw.horizon,
        initial_worker_capital: raw.initial_k_w,
        initial_capitalist_capital: raw.initial_k_c,
        profit_rate: raw.profit_rate_path,
        wage: raw.wage_path,
        propensities,
        mode,
        carryover: raw.carryover,
    };
    config.validate()?;
    Ok(config)
}

fn proportional_run(raw: RawProportional) -> Result<ProportionalRun> {
    let run = ProportionalRun {
        spec: ProportionalSavingsSpec {
            worker_scale: raw.c,
            capitalist_scale: raw.d,
            multiplier: raw.f,
        },
        horizon: raw.horizon,
        initial_worker_capital: raw.initial_k_w,
        initial_capitalist_capital: raw.initial_k_c,
    };
    if run.horizon < 1 {
        return Err(Error::validation("horizon", "must be at least 1"));
    }
    run.spec.validate(run.horizon)?;
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "schema_version": 1,
        "scenario": {
            "horizon": 1,
            "initial_K_w": 0,
            "initial_K_c": 100,
            "profit_rate_path": {"constant": 0.05},
            "wage_path": {"constant": 30},
            "propensities": {"s_w": 0.1, "s_c": 0.4},
            "mode": "unconstrained"
        }
    }"#;

    fn field_of(err: Error) -> String {
        match err {
            Error::Validation { field, .. } => field,
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_document() {
        let parsed = parse_scenario(MINIMAL.as_bytes()).unwrap();
        let ParsedScenario::Scenario(cfg) = parsed else {
            panic!("expected scenario")
        };
        assert_eq!(cfg.horizon, 1);
        assert_eq!(cfg.mode, SavingsMode::Unconstrained);
        assert!(!cfg.carryover);
    }

    #[test]
    fn negative_wage_names_field() {
        let doc = MINIMAL.replace(r#"{"constant": 30}"#, r#"{"constant": -30}"#);
        assert_eq!(
            field_of(parse_scenario(doc.as_bytes()).unwrap_err()),
            "wage_path"
        );
    }

    #[test]
    fn contract_without_ratio() {
        let doc = MINIMAL.replace(r#""unconstrained""#, r#""contract""#);
        assert_eq!(
            field_of(parse_scenario(doc.as_bytes()).unwrap_err()),
            "contract_R"
        );
    }

    #[test]
    fn ratio_without_contract() {
        let doc = MINIMAL.replace(
            r#""mode": "unconstrained""#,
            r#""mode": "unconstrained", "contract_R": 0.2"#,
        );
        assert_eq!(
            field_of(parse_scenario(doc.as_bytes()).unwrap_err()),
            "contract_R"
        );
    }

    #[test]
    fn bad_propensity_names_field() {
        let doc = MINIMAL.replace(r#""s_c": 0.4"#, r#""s_c": 1.4"#);
        assert_eq!(
            field_of(parse_scenario(doc.as_bytes()).unwrap_err()),
            "propensities.s_c"
        );
    }

    #[test]
    fn unknown_key_rejected() {
        let doc = MINIMAL.replace(r#""horizon": 1,"#, r#""horizon": 1, "bogus": 3,"#);
        let err = parse_scenario(doc.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
    }

    #[test]
    fn syntax_error_has_line() {
        let doc = "{\n  \"schema_version\": 1,\n  \"scenario\": {,\n}";
        match parse_scenario(doc.as_bytes()).unwrap_err() {
            Error::Malformed { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_schema_version() {
        let doc = MINIMAL.replace(r#""schema_version": 1"#, r#""schema_version": 2"#);
        assert_eq!(
            field_of(parse_scenario(doc.as_bytes()).unwrap_err()),
            "schema_version"
        );
    }

    #[test]
    fn list_length_checked() {
        let doc = MINIMAL.replace(r#"{"constant": 0.05}"#, r#"{"list": [0.05, 0.05]}"#);
        assert_eq!(
            field_of(parse_scenario(doc.as_bytes()).unwrap_err()),
            "profit_rate_path"
        );
    }

    #[test]
    fn proportional_document() {
        let doc = r#"{"schema_version": 1, "proportional": {
            "C": 1, "D": 4, "f": {"geometric": {"initial": 1, "ratio": 1.05}}, "horizon": 20
        }}"#;
        let ParsedScenario::Proportional(run) = parse_scenario(doc.as_bytes()).unwrap() else {
            panic!("expected proportional")
        };
        assert_eq!(run.spec.total_scale(), 5.0);
        assert_eq!(run.simulate().unwrap().len(), 20);
    }

    #[test]
    fn both_targets_rejected() {
        let doc = MINIMAL.replace(
            r#""schema_version": 1,"#,
            r#""schema_version": 1, "proportional": {"C": 1, "D": 1, "f": {"constant": 1}, "horizon": 1},"#,
        );
        assert_eq!(
            field_of(parse_scenario(doc.as_bytes()).unwrap_err()),
            "scenario"
        );
    }

    #[test]
    fn closure_only_accepts_savings_equal_investment() {
        let ok = MINIMAL.replace(
            r#""mode": "unconstrained""#,
            r#""mode": "unconstrained", "investment_closure": "S=I""#,
        );
        assert!(parse_scenario(ok.as_bytes()).is_ok());
        let bad = MINIMAL.replace(
            r#""mode": "unconstrained""#,
            r#""mode": "unconstrained", "investment_closure": "I=f(r)""#,
        );
        assert!(parse_scenario(bad.as_bytes()).is_err());
    }
}

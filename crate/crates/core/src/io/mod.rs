//! Scenario files in, trajectory CSV out.

mod csv;
mod scenario;

pub use self::csv::{emit_trajectory, format_number, parse_trajectory, HEADER};
pub use self::scenario::{parse_scenario, ParsedScenario, ProportionalRun, SCHEMA_VERSION};

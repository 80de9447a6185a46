//! Library surface of the scenario runner: check results, Bianchi
//! calibration, frame-file parsing and the per-model check suites.

pub mod parse;
pub mod report;
pub mod scenario;

pub use parse::{parse_frame, ParseError};
pub use report::{bianchi_calibrate, summary, AlphaSign, BianchiReport, CheckResult, CheckStatus};
pub use scenario::{run_frame_scenario, run_scenario, CheckSelection, ScenarioError, GROUPS};

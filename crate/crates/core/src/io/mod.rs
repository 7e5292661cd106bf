//! Scenario files, metric emitters and plots.

pub mod plots;
pub mod scenario;
pub mod summary;
pub mod timeseries;

pub use plots::emit_plots;
pub use scenario::{parse_scenario, parse_scenario_str, scenario_to_string};
pub use summary::{emit_summary, parse_summary, SummaryEntry, SummaryReport};
pub use timeseries::{emit_timeseries, parse_timeseries, timeseries_to_string, TIMESERIES_HEADER};

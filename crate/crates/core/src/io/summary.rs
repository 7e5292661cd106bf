//! JSON run summaries. Maps are ordered, so output bytes are stable for a
//! given input.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::engine::{RunOutput, Sweep};
use crate::error::{Error, Result};
use crate::metrics::TimelineSummary;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryEntry {
    pub scenario: String,
    pub seed: u64,
    pub best: bool,
    pub summary: TimelineSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub scenario: String,
    pub best_seed: u64,
    pub runs: Vec<SummaryEntry>,
}

impl SummaryReport {
    pub fn from_run(run: &RunOutput) -> Self {
        Self {
            scenario: run.scenario.clone(),
            best_seed: run.seed,
            runs: vec![SummaryEntry {
                scenario: run.scenario.clone(),
                seed: run.seed,
                best: true,
                summary: run.summary.clone(),
            }],
        }
    }

    pub fn from_sweep(sweep: &Sweep) -> Self {
        let best = sweep.best_run();
        Self {
            scenario: best.scenario.clone(),
            best_seed: best.seed,
            runs: sweep
                .runs
                .iter()
                .enumerate()
                .map(|(i, r)| SummaryEntry {
                    scenario: r.scenario.clone(),
                    seed: r.seed,
                    best: i == sweep.best,
                    summary: r.summary.clone(),
                })
                .collect(),
        }
    }
}

pub fn summary_to_string(report: &SummaryReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("summary serializes");
    s.push('\n');
    s
}

pub fn emit_summary(report: &SummaryReport, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if report.runs.is_empty() {
        return Err(Error::EmptyRecords);
    }
    std::fs::write(path, summary_to_string(report)).map_err(|e| Error::io(path, e))
}

pub fn parse_summary(path: impl AsRef<Path>) -> Result<SummaryReport> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

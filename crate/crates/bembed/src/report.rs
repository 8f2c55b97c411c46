//! JSON form of an evaluation report.

use bembed_core::{AngleStrategy, EvalReport};
use serde::{Deserialize, Serialize};

/// Flat JSON object written by `embed --report` and `eval`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub r_c: f64,
    pub r_k: f64,
    pub original_linkage: Option<String>,
    pub converted_linkage: String,
    pub dissimilarity: Option<String>,
    pub converted_dissimilarity: String,
    pub strategy: Option<String>,
    pub theta: Option<f64>,
    pub swap: bool,
    pub seed: u64,
}

impl ReportJson {
    pub fn new(report: &EvalReport, seed: u64) -> Self {
        let (theta, swap) = match report.strategy {
            Some(AngleStrategy::Fixed { theta_deg, swap }) => (Some(theta_deg), swap),
            _ => (None, false),
        };
        // a random strategy carries the seed it actually used
        let seed = match report.strategy {
            Some(AngleStrategy::Random { seed: used }) => used,
            _ => seed,
        };
        ReportJson {
            r_c: report.r_c,
            r_k: report.r_k,
            original_linkage: report.original_linkage.map(|m| m.name().to_owned()),
            converted_linkage: report.converted_linkage.name().to_owned(),
            dissimilarity: report.dissimilarity.map(|k| k.name().to_owned()),
            converted_dissimilarity: report.converted_dissimilarity.name().to_owned(),
            strategy: report.strategy.map(|s| s.kind().to_owned()),
            theta,
            swap,
            seed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

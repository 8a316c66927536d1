//! Named experiments: scans over the coupling, the partial-wave index and
//! the box, each ending in verdicts with the inequality that was tested.

mod config;
mod cone;
mod output;
mod problems;
mod rooftop;
mod slack;
mod surface;
mod transverse_report;

pub use config::{
    ConeScanConfig, ExperimentConfig, ExteriorConfig, GridLadder, ModeScanConfig, RooftopConfig, SurfaceConfig,
    TransverseConfig,
};
pub use cone::{cone_bias_scan, exterior_positivity_check, mode_scan};
pub use output::{plot_report, write_csv, write_json};
pub use problems::{broken_line_problem, cone_problem, straight_line_problem};
pub use rooftop::{
    bump, bump_gprime_norm_sq, rooftop_experiment, rooftop_lambda, rooftop_trial_energy, RooftopLambdas,
    RooftopTrial,
};
pub use slack::{calibrate_slack, default_slack, SlackCalibration};
pub use surface::verify_surface;
pub use transverse_report::{transverse_report, TransverseRow};

use crate::discretize::DiscretizeError;
use crate::eigensolve::{EigenError, SpectralTag};
use crate::geometry::GeometryError;
use crate::transverse::TransverseError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Transverse(#[from] TransverseError),
    #[error(transparent)]
    Discretize(#[from] DiscretizeError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{context}: {source}")]
    Solver { context: String, source: EigenError },
    #[error("no bound state below the threshold (theta = {theta}, v0 = {v0})")]
    NoBoundState { theta: f64, v0: f64 },
    #[error("config: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("output: {0}")]
    Output(String),
}

impl ExperimentError {
    pub(crate) fn solver(context: impl Into<String>, source: EigenError) -> Self {
        ExperimentError::Solver { context: context.into(), source }
    }
}

impl From<EigenError> for ExperimentError {
    fn from(e: EigenError) -> Self {
        Self::solver("solve", e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Confirmed,
    Refuted,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub claim: String,
    /// the inequality as evaluated, with numbers
    pub inequality: String,
    pub verdict: Verdict,
}

impl VerdictRecord {
    pub fn new(claim: impl Into<String>, inequality: impl Into<String>, verdict: Verdict) -> Self {
        Self { claim: claim.into(), inequality: inequality.into(), verdict }
    }

    /// Confirmed when `holds`, otherwise `otherwise`.
    pub fn check(claim: impl Into<String>, inequality: impl Into<String>, holds: bool, otherwise: Verdict) -> Self {
        Self::new(claim, inequality, if holds { Verdict::Confirmed } else { otherwise })
    }
}

/// One eigenvalue with everything needed to recompute it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenRow {
    pub experiment_id: String,
    pub m: Option<i32>,
    pub v0: f64,
    pub alpha: f64,
    pub theta: Option<f64>,
    #[serde(rename = "box")]
    pub box_size: f64,
    pub spacing: f64,
    pub index: usize,
    pub eigenvalue: f64,
    pub residual: f64,
    pub classification: String,
}

impl EigenRow {
    pub fn tag(&self) -> Option<SpectralTag> {
        match self.classification.as_str() {
            "discrete" => Some(SpectralTag::Discrete),
            "essential_edge_artifact" => Some(SpectralTag::EssentialEdgeArtifact),
            _ => None,
        }
    }
}

pub(crate) const UNCLASSIFIED: &str = "unclassified";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPoint {
    pub v0: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub experiment_id: String,
    pub axis: String,
    pub axis_values: Vec<f64>,
    pub rows: Vec<EigenRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transverse_rows: Vec<TransverseRow>,
    pub thresholds: Vec<ThresholdPoint>,
    pub verdicts: Vec<VerdictRecord>,
    /// scalar results: slack, cutoffs, jumps, lengths
    pub summary: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    /// the configuration that produced this report
    pub config: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra: Option<serde_json::Value>,
}

impl ScanReport {
    pub(crate) fn new(id: &str, axis: &str, config: &impl Serialize) -> Self {
        Self {
            experiment_id: id.to_string(),
            axis: axis.to_string(),
            axis_values: Vec::new(),
            rows: Vec::new(),
            transverse_rows: Vec::new(),
            thresholds: Vec::new(),
            verdicts: Vec::new(),
            summary: BTreeMap::new(),
            notes: Vec::new(),
            config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
            extra: None,
        }
    }

    pub fn worst_verdict(&self) -> Verdict {
        worst(self.verdicts.iter().map(|v| v.verdict))
    }

    /// 0 all confirmed, 2 any refuted, 3 any inconclusive.
    pub fn exit_code(&self) -> i32 {
        exit_code(self.worst_verdict())
    }

    pub fn from_json(text: &str) -> Result<Self, ExperimentError> {
        serde_json::from_str(text).map_err(|e| ExperimentError::Output(e.to_string()))
    }
}

fn worst(vs: impl Iterator<Item = Verdict>) -> Verdict {
    let mut out = Verdict::Confirmed;
    for v in vs {
        match v {
            Verdict::Refuted => return Verdict::Refuted,
            Verdict::Inconclusive => out = Verdict::Inconclusive,
            Verdict::Confirmed => {}
        }
    }
    out
}

pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Confirmed => 0,
        Verdict::Refuted => 2,
        Verdict::Inconclusive => 3,
    }
}

/// `n` equispaced points on `[a, b]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

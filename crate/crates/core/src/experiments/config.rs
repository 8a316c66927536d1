//! Experiment configuration. Every field has a default, so a config file
//! only names what it changes:
//!
//! ```toml
//! seed = 11
//!
//! [cone_scan]
//! v0_points = 11
//! ladder = { spacing = 0.2, boxes = [25.0, 50.0, 100.0], tube_width = 12.0 }
//! ```

use super::ExperimentError;
use crate::geometry::{ProbePlan, SurfaceSpec};
use crate::transverse::BiasSide;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, PI};

/// Fixed spacing, growing boxes. Boxes are ray lengths for the cone and the
/// broken line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridLadder {
    pub spacing: f64,
    pub boxes: Vec<f64>,
    /// half-width of the band around the δ-line that carries unknowns
    pub tube_width: f64,
}

impl Default for GridLadder {
    fn default() -> Self {
        Self { spacing: 0.1, boxes: vec![50.0, 100.0, 200.0], tube_width: 12.0 }
    }
}

impl GridLadder {
    pub fn largest(&self) -> f64 {
        self.boxes.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub(crate) fn validate(&self) -> Result<(), ExperimentError> {
        if !(self.spacing > 0.0) || !(self.tube_width > 0.0) || self.boxes.iter().any(|b| !(*b > 0.0)) {
            return Err(ExperimentError::Config("ladder needs positive spacing, width and boxes".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConeScanConfig {
    pub theta: f64,
    pub alpha: f64,
    pub bias_side: BiasSide,
    /// explicit `V₀` values; when empty, `v0_points` points on `[0, v0_max]`
    pub v0_list: Vec<f64>,
    pub v0_points: usize,
    /// upper end of the default scan; `α²` when absent
    pub v0_max: Option<f64>,
    pub ladder: GridLadder,
    /// box used for the `V₀` curve
    pub curve_box: f64,
    /// `V₀` values at which the whole ladder is solved and classified
    pub ladder_v0: Vec<f64>,
    /// scan points with `V₀ ≤ small_fraction α²` form the small-`V₀` part
    pub small_fraction: f64,
    /// largest admissible jump between adjacent scan points; when absent
    /// the jump must shrink (ratio ≤ 0.75) from every second point to the
    /// full scan
    pub jump_tol: Option<f64>,
    pub k: usize,
    pub tol: f64,
}

impl Default for ConeScanConfig {
    fn default() -> Self {
        Self {
            theta: FRAC_PI_4,
            alpha: 1.0,
            bias_side: BiasSide::Interior,
            v0_list: Vec::new(),
            v0_points: 21,
            v0_max: None,
            ladder: GridLadder::default(),
            curve_box: 100.0,
            ladder_v0: vec![0.0],
            small_fraction: 0.2,
            jump_tol: None,
            k: 3,
            tol: 1e-9,
        }
    }
}

impl ConeScanConfig {
    pub fn v0_values(&self) -> Vec<f64> {
        if !self.v0_list.is_empty() {
            return self.v0_list.clone();
        }
        super::linspace(0.0, self.v0_max.unwrap_or(self.alpha * self.alpha), self.v0_points)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModeScanConfig {
    pub theta: f64,
    pub alpha: f64,
    pub v0_list: Vec<f64>,
    pub m_list: Vec<i32>,
    pub ladder: GridLadder,
    pub k: usize,
    pub tol: f64,
}

impl Default for ModeScanConfig {
    fn default() -> Self {
        Self {
            theta: FRAC_PI_4,
            alpha: 1.0,
            v0_list: vec![0.0, 0.5],
            m_list: vec![0, 1, 2],
            ladder: GridLadder::default(),
            k: 3,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExteriorConfig {
    pub theta: f64,
    pub alpha: f64,
    pub v0_list: Vec<f64>,
    pub bias_side: BiasSide,
    pub m_list: Vec<i32>,
    pub ladder: GridLadder,
    pub k: usize,
    pub tol: f64,
}

impl Default for ExteriorConfig {
    fn default() -> Self {
        Self {
            theta: FRAC_PI_4,
            alpha: 1.0,
            v0_list: vec![1.0, 4.0],
            bias_side: BiasSide::Exterior,
            m_list: vec![0, 1, 2],
            ladder: GridLadder { boxes: vec![25.0, 50.0, 100.0], ..GridLadder::default() },
            k: 3,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RooftopConfig {
    /// half-opening of the broken line, `2θ` between the rays
    pub theta: f64,
    pub alpha: f64,
    /// bias inside the wedge; critical `α²` by default
    pub v0: f64,
    pub ladder: GridLadder,
    /// cross-section solved with `V₀ = 0` for the bound-state baseline
    pub baseline: bool,
    /// sharper broken line whose count is compared with `theta`'s
    pub compare_theta: Option<f64>,
    pub compare_spacing: f64,
    pub k: usize,
    pub tol: f64,
}

impl Default for RooftopConfig {
    fn default() -> Self {
        Self {
            theta: FRAC_PI_4,
            alpha: 1.0,
            v0: 1.0,
            ladder: GridLadder { spacing: 0.1, boxes: vec![20.0, 40.0, 80.0], tube_width: 12.0 },
            baseline: true,
            compare_theta: Some(PI / 12.0),
            compare_spacing: 0.05,
            k: 4,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TransverseConfig {
    pub alpha: f64,
    pub v0_list: Vec<f64>,
    pub d_list: Vec<f64>,
    pub hardy_trials: usize,
    pub hardy_spacing: f64,
    pub hardy_extent: f64,
    pub root_tol: f64,
}

impl Default for TransverseConfig {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            v0_list: vec![0.0, 0.5, 1.0, 4.0],
            d_list: vec![5.0, 10.0, 20.0, 40.0],
            hardy_trials: 200,
            hardy_spacing: 0.005,
            hardy_extent: 40.0,
            root_tol: 1e-14,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SurfaceConfig {
    pub surface: SurfaceSpec,
    pub probe: ProbePlan,
}

impl Default for SurfaceConfig {
    fn default() -> Self {
        Self { surface: SurfaceSpec::Cone { theta: FRAC_PI_4 }, probe: ProbePlan::default() }
    }
}

/// All experiment sections of one config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub transverse: TransverseConfig,
    pub cone_scan: ConeScanConfig,
    pub mode_scan: ModeScanConfig,
    pub exterior_check: ExteriorConfig,
    pub rooftop: RooftopConfig,
    pub verify_surface: SurfaceConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 20140601,
            transverse: TransverseConfig::default(),
            cone_scan: ConeScanConfig::default(),
            mode_scan: ModeScanConfig::default(),
            exterior_check: ExteriorConfig::default(),
            rooftop: RooftopConfig::default(),
            verify_surface: SurfaceConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, ExperimentError> {
        toml::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))
    }
}

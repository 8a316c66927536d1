//! Discretization slack `C h`, with `C` calibrated on the straight line
//! where the continuum answer is separable.

use super::{problems::straight_line_problem, ExperimentError};
use crate::eigensolve::lowest_eigenpairs;
use crate::roots::bisect;
use crate::transverse::{BiasSide, CouplingParams};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlackCalibration {
    pub alpha: f64,
    pub box_length: f64,
    pub half_width: f64,
    pub spacings: Vec<f64>,
    pub values: Vec<f64>,
    /// exact lowest eigenvalue of the continuum box problem
    pub reference: f64,
    /// `max |λ_h - reference| / h`
    pub constant: f64,
    /// `log₂` of successive difference ratios (Cauchy order)
    pub observed_order: f64,
}

impl SlackCalibration {
    pub fn slack(&self, h: f64) -> f64 {
        self.constant * h
    }
}

/// Lowest eigenvalue of `-Δ - α δ(y)` on `(-L/2, L/2) × (-W, W)` with
/// Dirichlet walls: `π²/L² - κ²` where `2κ = α tanh(κW)`.
pub fn straight_line_reference(alpha: f64, length: f64, half_width: f64) -> f64 {
    let f = |k: f64| 2.0 * k - alpha * (k * half_width).tanh();
    let kappa = bisect(f, 1e-3 * alpha, alpha, 1e-15);
    (PI / length).powi(2) - kappa * kappa
}

/// Solves the straight line for every spacing (sorted descending).
pub fn calibrate_slack(
    alpha: f64,
    spacings: &[f64],
    box_length: f64,
    half_width: f64,
) -> Result<SlackCalibration, ExperimentError> {
    if spacings.len() < 3 {
        return Err(ExperimentError::Config("slack calibration needs three spacings".into()));
    }
    let mut hs = spacings.to_vec();
    hs.sort_by(|a, b| b.total_cmp(a));
    let params = CouplingParams::new(alpha, 0.0, BiasSide::Interior)?;
    let mut values = Vec::with_capacity(hs.len());
    for &h in &hs {
        let p = straight_line_problem(&params, h, box_length, half_width)?;
        let r = lowest_eigenpairs(&p, 1, 1e-10).map_err(|e| ExperimentError::solver(format!("straight line h = {h}"), e))?;
        values.push(r.values[0]);
    }
    let reference = straight_line_reference(alpha, box_length, half_width);
    let constant = hs.iter().zip(&values).map(|(h, v)| (v - reference).abs() / h).fold(0.0, f64::max);
    let n = values.len();
    let observed_order = ((values[n - 3] - values[n - 2]) / (values[n - 2] - values[n - 1])).abs().log2();
    Ok(SlackCalibration { alpha, box_length, half_width, spacings: hs, values, reference, constant, observed_order })
}

static DEFAULT: OnceLock<SlackCalibration> = OnceLock::new();

/// Calibration at `α = 1`, spacings 0.2, 0.1, 0.05 on the box `40 × 24`;
/// computed once per process.
pub fn default_slack() -> Result<&'static SlackCalibration, ExperimentError> {
    if let Some(c) = DEFAULT.get() {
        return Ok(c);
    }
    let c = calibrate_slack(1.0, &[0.2, 0.1, 0.05], 40.0, 12.0)?;
    Ok(DEFAULT.get_or_init(|| c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_tends_to_free_line() {
        let r = straight_line_reference(1.0, 1e6, 30.0);
        assert!((r + 0.25).abs() < 1e-10);
        assert!(straight_line_reference(1.0, 40.0, 12.0) > -0.25);
    }

    #[test]
    fn coarse_calibration_is_small() {
        let c = calibrate_slack(1.0, &[0.8, 0.4, 0.2], 16.0, 6.0).unwrap();
        assert!(c.constant < 0.05, "{c:?}");
        assert!(c.values.iter().all(|v| *v < 0.0));
    }
}

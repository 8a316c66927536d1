//! The transverse operator `h = -d²/dx² - α δ(x) + V(x)` on the line, with
//! `V = V₀` for `x > 0` and `0` for `x < 0`, and its Neumann-boxed version
//! on `(-d, d)`.

mod hardy;
mod neumann;
mod zero_mode;

pub use hardy::{hardy_margin, hardy_margin_with, HardyMargin, HardyOptions, HardyTrial, TrialTerm};
pub(crate) use hardy::simpson;
pub use neumann::{
    neumann_box_gap, neumann_box_ground_energy, spectral_condition, NeumannBoxParams, C0,
};
pub use zero_mode::{critical_zero_mode, critical_zero_mode_residual, ZeroModeResidual};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance on `|V₀ - α²|` below which the coupling is critical.
pub const CRITICAL_RTOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransverseError {
    #[error("invalid coupling: alpha = {alpha}, v0 = {v0} (need alpha > 0, v0 >= 0)")]
    InvalidCoupling { alpha: f64, v0: f64 },
    #[error("invalid box half-width d = {0}")]
    InvalidBox(f64),
    #[error("root bracket for the box spectral condition not found (last upper end {upper})")]
    ConvergenceFailure { upper: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("sampled function does not decay: tail fraction {fraction:.3e} exceeds {limit:.1e}")]
    InsufficientDecay { fraction: f64, limit: f64 },
    #[error("hardy margin needs v0 > 0, got {0}")]
    NonPositiveBias(f64),
}

/// Which side of the surface carries the bias `V₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum BiasSide {
    #[default]
    Interior,
    Exterior,
}

impl BiasSide {
    pub fn flipped(self) -> Self {
        match self {
            BiasSide::Interior => BiasSide::Exterior,
            BiasSide::Exterior => BiasSide::Interior,
        }
    }
}

impl std::fmt::Display for BiasSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BiasSide::Interior => "interior",
            BiasSide::Exterior => "exterior",
        })
    }
}

/// Coupling `α`, bias height `V₀` and the side the bias sits on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingParams {
    pub alpha: f64,
    pub v0: f64,
    pub bias_side: BiasSide,
}

impl CouplingParams {
    pub fn new(alpha: f64, v0: f64, bias_side: BiasSide) -> Result<Self, TransverseError> {
        let p = Self { alpha, v0, bias_side };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), TransverseError> {
        if !(self.alpha > 0.0 && self.alpha.is_finite() && self.v0 >= 0.0 && self.v0.is_finite()) {
            return Err(TransverseError::InvalidCoupling { alpha: self.alpha, v0: self.v0 });
        }
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        classify_regime(self, CRITICAL_RTOL)
    }

    pub fn with_v0(self, v0: f64) -> Self {
        Self { v0, ..self }
    }

    /// `(α, V₀) -> (cα, c²V₀)`; energies scale by `c²`, lengths by `1/c`.
    pub fn scaled(self, c: f64) -> Self {
        Self { alpha: c * self.alpha, v0: c * c * self.v0, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

pub fn classify_regime(params: &CouplingParams, tol: f64) -> Regime {
    let a2 = params.alpha * params.alpha;
    if (params.v0 - a2).abs() <= tol * a2 {
        Regime::Critical
    } else if params.v0 < a2 {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    }
}

/// Bottom of the essential spectrum, `-(α² - V₀)²/(4α²)` below criticality
/// and `0` otherwise.
pub fn essential_threshold(params: &CouplingParams) -> f64 {
    match params.regime() {
        Regime::Subcritical => {
            let k1 = decay_unbiased(params);
            -k1 * k1
        }
        _ => 0.0,
    }
}

/// The single eigenvalue of `h`, present only below criticality.
pub fn bound_state_energy(params: &CouplingParams) -> Option<f64> {
    match params.regime() {
        Regime::Subcritical => Some(essential_threshold(params)),
        _ => None,
    }
}

// (α² - V₀)/(2α)
fn decay_unbiased(params: &CouplingParams) -> f64 {
    (params.alpha * params.alpha - params.v0) / (2.0 * params.alpha)
}

/// Threshold together with the two decay rates of the bound state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransverseSpectrum {
    pub mu: f64,
    pub bound_state: Option<f64>,
    pub kappa1: f64,
    pub kappa2: f64,
}

pub fn transverse_spectrum(params: &CouplingParams) -> TransverseSpectrum {
    let mu = essential_threshold(params);
    let (kappa1, kappa2) = match params.regime() {
        Regime::Subcritical => {
            let k1 = decay_unbiased(params);
            (k1, (params.alpha * params.alpha + params.v0) / (2.0 * params.alpha))
        }
        _ => (0.0, params.v0.sqrt()),
    };
    TransverseSpectrum { mu, bound_state: bound_state_energy(params), kappa1, kappa2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(alpha: f64, v0: f64) -> CouplingParams {
        CouplingParams::new(alpha, v0, BiasSide::Interior).unwrap()
    }

    #[test]
    fn regimes() {
        assert_eq!(p(1.0, 0.0).regime(), Regime::Subcritical);
        assert_eq!(p(1.0, 1.0).regime(), Regime::Critical);
        assert_eq!(p(1.0, 2.0).regime(), Regime::Supercritical);
        assert_eq!(p(1.0, 1.0 + 1e-13).regime(), Regime::Critical);
        assert_eq!(p(1.0, 1.0 - 1e-9).regime(), Regime::Subcritical);
    }

    #[test]
    fn thresholds() {
        assert_eq!(essential_threshold(&p(1.0, 0.0)), -0.25);
        assert_eq!(essential_threshold(&p(1.0, 1.0)), 0.0);
        assert!((essential_threshold(&p(2.0, 1.0)) + 0.5625).abs() < 1e-15);
        assert_eq!(bound_state_energy(&p(1.0, 0.0)), Some(-0.25));
        assert_eq!(bound_state_energy(&p(1.0, 1.0)), None);
        assert!((bound_state_energy(&p(1.0, 0.5)).unwrap() + 0.0625).abs() < 1e-15);
    }

    #[test]
    fn kappas() {
        let s = transverse_spectrum(&p(1.3, 0.7));
        assert!((s.kappa2 * s.kappa2 - s.kappa1 * s.kappa1 - 0.7).abs() < 1e-14);
        assert!((s.kappa1 * s.kappa1 + s.mu).abs() < 1e-15);
        let c = transverse_spectrum(&p(1.0, 3.0));
        assert_eq!(c.kappa1, 0.0);
        assert!(c.bound_state.is_none());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(CouplingParams::new(0.0, 0.0, BiasSide::Interior).is_err());
        assert!(CouplingParams::new(1.0, -0.1, BiasSide::Interior).is_err());
        assert!(CouplingParams::new(f64::NAN, 0.0, BiasSide::Interior).is_err());
    }
}

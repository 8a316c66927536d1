//! Lowest eigenpairs of `A x = λ B x` with `B` diagonal positive.

mod classify;
mod dense;
mod krylov;
mod shift;

pub use classify::{
    classify_spectrum, classify_values, ClassifyOptions, LadderSolve, SpectralClassification, SpectralTag,
};
pub use dense::{dense_eigenpairs, dense_oracle, DENSE_LIMIT};

use crate::discretize::EigenProblem;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EigenError {
    #[error("no convergence after {iterations} restarts (best residual {best_residual:.3e})")]
    NoConvergence { iterations: usize, best_residual: f64 },
    #[error("dimension {n} exceeds the dense limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("factorization failed: {0}")]
    Factorization(String),
    #[error("need at least 3 box sizes, got {0}")]
    InsufficientLadder(usize),
    #[error("problem assembly failed: {0}")]
    Assembly(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// bound on `‖Ax - λBx‖ / ‖Bx‖`
    pub tol: f64,
    /// initial shift; defaults to `μ - |μ|/2` when the coupling is known and
    /// to a Gershgorin lower bound otherwise
    pub shift: Option<f64>,
    pub block_size: Option<usize>,
    pub basis_size: Option<usize>,
    pub max_restarts: usize,
    /// move the shift once toward the computed bottom of the spectrum
    pub reshift: bool,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            shift: None,
            block_size: None,
            basis_size: None,
            max_restarts: 500,
            reshift: true,
            seed: 0x5eed,
        }
    }
}

impl SolverOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Default::default() }
    }
}

/// Lowest eigenpairs, ascending, with `B`-orthonormal vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigResult {
    pub values: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub vectors: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
    pub shift: f64,
}

impl EigResult {
    /// JSON text; vectors are included only on request.
    pub fn to_json(&self, with_vectors: bool) -> String {
        if with_vectors {
            serde_json::to_string_pretty(self).expect("serializable")
        } else {
            let slim = EigResult { vectors: Vec::new(), ..self.clone() };
            serde_json::to_string_pretty(&slim).expect("serializable")
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// `k` lowest eigenpairs with residuals below `tol`.
pub fn lowest_eigenpairs(problem: &EigenProblem, k: usize, tol: f64) -> Result<EigResult, EigenError> {
    lowest_eigenpairs_with(problem, k, &SolverOptions::with_tol(tol))
}

pub fn lowest_eigenpairs_with(problem: &EigenProblem, k: usize, opts: &SolverOptions) -> Result<EigResult, EigenError> {
    shift::solve(problem, k, opts)
}

/// `‖Ax - λBx‖ / ‖Bx‖`.
pub fn residual_norm(problem: &EigenProblem, x: &[f64], lambda: f64) -> f64 {
    let mut ax = vec![0.0; x.len()];
    problem.apply_form(x, &mut ax);
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..x.len() {
        let bx = problem.weights[i] * x[i];
        num += (ax[i] - lambda * bx).powi(2);
        den += bx * bx;
    }
    (num / den).sqrt()
}

//! Discrete versus box-artifact classification across a box ladder.

use super::{EigResult, EigenError};
use crate::discretize::EigenProblem;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralTag {
    /// below the threshold and stable under box growth
    Discrete,
    /// at or above the threshold, or drifting with the box
    EssentialEdgeArtifact,
}

impl std::fmt::Display for SpectralTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SpectralTag::Discrete => "discrete",
            SpectralTag::EssentialEdgeArtifact => "essential_edge_artifact",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    /// largest change between the two largest boxes for a stable value;
    /// defaults to `1e-3 max(|μ|, 0.1)`
    pub stability: Option<f64>,
    /// required distance below `μ`; defaults to `max(|drift|, residual)`
    pub margin: Option<f64>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { stability: None, margin: None }
    }
}

/// Eigenvalues of one rung of the ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderSolve {
    pub box_size: f64,
    pub result: EigResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralClassification {
    pub threshold: f64,
    pub box_sizes: Vec<f64>,
    /// eigenvalues on the largest box
    pub values: Vec<f64>,
    pub tags: Vec<SpectralTag>,
    /// change between the two largest boxes, per index
    pub drift: Vec<f64>,
    pub residuals: Vec<f64>,
    pub ladder: Vec<LadderSolve>,
}

impl SpectralClassification {
    pub fn discrete(&self) -> Vec<f64> {
        self.values.iter().zip(&self.tags).filter(|(_, t)| **t == SpectralTag::Discrete).map(|(v, _)| *v).collect()
    }

    pub fn lowest_discrete(&self) -> Option<f64> {
        self.discrete().first().copied()
    }
}

/// Tags eigenvalue index `j` from its values on each rung (`ladder[r][j]`,
/// boxes ascending) and the residual on the largest box.
pub fn classify_values(ladder: &[Vec<f64>], residuals: &[f64], mu: f64, opts: &ClassifyOptions) -> (Vec<SpectralTag>, Vec<f64>) {
    let stability = opts.stability.unwrap_or(1e-3 * mu.abs().max(0.1));
    let last = ladder.len() - 1;
    let k = ladder.iter().map(Vec::len).min().unwrap_or(0);
    let mut tags = Vec::with_capacity(k);
    let mut drift = Vec::with_capacity(k);
    for j in 0..k {
        let d = ladder[last][j] - ladder[last - 1][j];
        let res = residuals.get(j).copied().unwrap_or(0.0);
        let margin = opts.margin.unwrap_or(d.abs().max(res));
        let stable = d.abs() <= stability;
        let below = ladder[last][j] < mu - margin;
        tags.push(if stable && below { SpectralTag::Discrete } else { SpectralTag::EssentialEdgeArtifact });
        drift.push(d);
    }
    (tags, drift)
}

/// Solves on each box of the ladder and classifies the `k` lowest values.
pub fn classify_spectrum<F>(
    boxes: &[f64],
    mut build: F,
    mu: f64,
    k: usize,
    tol: f64,
    opts: &ClassifyOptions,
) -> Result<SpectralClassification, EigenError>
where
    F: FnMut(f64) -> Result<EigenProblem, EigenError>,
{
    if boxes.len() < 3 {
        return Err(EigenError::InsufficientLadder(boxes.len()));
    }
    let mut sizes = boxes.to_vec();
    sizes.sort_by(f64::total_cmp);
    let mut ladder = Vec::with_capacity(sizes.len());
    for &l in &sizes {
        let p = build(l)?;
        let mut result = super::lowest_eigenpairs(&p, k, tol)?;
        result.vectors.clear();
        ladder.push(LadderSolve { box_size: l, result });
    }
    let values: Vec<Vec<f64>> = ladder.iter().map(|s| s.result.values.clone()).collect();
    let top = &ladder[ladder.len() - 1].result;
    let (tags, drift) = classify_values(&values, &top.residuals, mu, opts);
    Ok(SpectralClassification {
        threshold: mu,
        box_sizes: sizes,
        values: top.values.clone(),
        tags,
        drift,
        residuals: top.residuals.clone(),
        ladder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_value_below_threshold_is_discrete() {
        let ladder = vec![vec![-0.30, -0.2400], vec![-0.30, -0.2450], vec![-0.30, -0.2490]];
        let (tags, _) = classify_values(&ladder, &[1e-10, 1e-10], -0.25, &ClassifyOptions::default());
        assert_eq!(tags, vec![SpectralTag::Discrete, SpectralTag::EssentialEdgeArtifact]);
    }

    #[test]
    fn value_drifting_through_threshold_is_artifact() {
        let ladder = vec![vec![-0.2400], vec![-0.2490], vec![-0.2510]];
        let (tags, drift) = classify_values(&ladder, &[0.0], -0.25, &ClassifyOptions::default());
        assert_eq!(tags[0], SpectralTag::EssentialEdgeArtifact);
        assert!(drift[0] < 0.0);
    }

    #[test]
    fn short_ladder_rejected() {
        let r = classify_spectrum(&[1.0, 2.0], |_| unreachable!(), 0.0, 1, 1e-9, &ClassifyOptions::default());
        assert_eq!(r.unwrap_err(), EigenError::InsufficientLadder(2));
    }
}

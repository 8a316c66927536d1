//! Finite-difference quadratic forms `x·Ax` with diagonal weights `B`.
//!
//! All problems are assembled as forms, not operators: `A` carries the cell
//! area in the kinetic and potential parts and the arclength weights in the
//! δ-trace, `B` is the cell area. `A` is stored with both triangles and is
//! symmetric by construction.

mod bias;
mod delta;
mod grid;
mod mm;
mod partial_wave;
mod planar;
mod transverse1d;

pub use bias::{bias_indicator, bias_node_value, BiasRegion, Location};
pub use delta::{delta_trace_weights, DeltaLineSpec};
pub use grid::Grid2D;
pub use mm::{read_matrix_market, MatrixMarketEntry};
pub use partial_wave::{assemble_partial_wave, assemble_partial_wave_with, centrifugal_term};
pub use planar::{assemble_planar_delta, assemble_planar_delta_with};
pub use transverse1d::assemble_transverse;

use crate::transverse::CouplingParams;
use faer::sparse::{SparseColMat, Triplet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiscretizeError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid polyline: {0}")]
    InvalidPolyline(String),
    #[error("delta line crosses a grid line off-node near ({x}, {y})")]
    MisalignedDelta { x: f64, y: f64 },
    #[error("bias region selects no grid node")]
    EmptyBiasRegion,
    #[error("no active unknowns")]
    EmptyDomain,
    #[error("sparse assembly failed: {0}")]
    Assembly(String),
    #[error("i/o: {0}")]
    Io(String),
}

/// Which grid nodes are unknowns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub enum Domain {
    /// every node of the grid
    #[default]
    Box,
    /// nodes closer than `width` to the δ-polyline
    Tube { width: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct AssemblyOptions {
    pub domain: Domain,
}

/// Mesh an [`EigenProblem`] lives on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Mesh {
    /// nodes `x0 + i h`, `i < n`
    Line { x0: f64, h: f64, n: usize },
    Plane(Grid2D),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProblemKind {
    PartialWave,
    Planar,
    Transverse,
    Generic,
}

/// Parameters carried along with a problem for reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemMeta {
    pub kind: ProblemKind,
    pub m: Option<i32>,
    pub theta: Option<f64>,
    pub params: Option<CouplingParams>,
    /// characteristic size (tube length, box length, ...)
    pub box_size: f64,
    pub spacing: f64,
    pub delta_nodes: usize,
}

impl ProblemMeta {
    pub fn generic() -> Self {
        Self { kind: ProblemKind::Generic, m: None, theta: None, params: None, box_size: 0.0, spacing: 0.0, delta_nodes: 0 }
    }

    /// Essential threshold of the continuum problem, if coupling is known.
    pub fn threshold(&self) -> Option<f64> {
        self.params.as_ref().map(crate::transverse::essential_threshold)
    }
}

/// Generalized symmetric problem `A x = λ B x` with `B` diagonal.
#[derive(Debug, Clone)]
pub struct EigenProblem {
    pub form_matrix: SparseColMat<usize, f64>,
    pub weights: Vec<f64>,
    pub mesh: Mesh,
    /// mesh node of each unknown
    pub dofs: Vec<usize>,
    pub meta: ProblemMeta,
}

impl EigenProblem {
    /// Builds a problem from lower- or full-triangle triplets; entries
    /// given for `(i, j)` with `i ≠ j` are mirrored.
    pub fn from_lower_triplets(
        n: usize,
        lower: &[(usize, usize, f64)],
        weights: Vec<f64>,
        mesh: Mesh,
        dofs: Vec<usize>,
        meta: ProblemMeta,
    ) -> Result<Self, DiscretizeError> {
        if weights.len() != n || weights.iter().any(|w| !(*w > 0.0)) {
            return Err(DiscretizeError::Assembly("weights must be positive, one per unknown".into()));
        }
        let mut t = Vec::with_capacity(2 * lower.len());
        for &(i, j, v) in lower {
            t.push(Triplet::new(i, j, v));
            if i != j {
                t.push(Triplet::new(j, i, v));
            }
        }
        let form_matrix = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &t)
            .map_err(|e| DiscretizeError::Assembly(format!("{e:?}")))?;
        Ok(Self { form_matrix, weights, mesh, dofs, meta })
    }

    /// Dense symmetric `A` and identity-free weights; convenience for small
    /// hand-made problems.
    pub fn from_dense(a: &[Vec<f64>], weights: Vec<f64>) -> Result<Self, DiscretizeError> {
        let n = a.len();
        let mut lower = Vec::new();
        for i in 0..n {
            for j in 0..=i {
                if a[i][j] != a[j][i] {
                    return Err(DiscretizeError::Assembly("matrix is not symmetric".into()));
                }
                if a[i][j] != 0.0 || i == j {
                    lower.push((i, j, a[i][j]));
                }
            }
        }
        Self::from_lower_triplets(
            n,
            &lower,
            weights,
            Mesh::Line { x0: 0.0, h: 1.0, n },
            (0..n).collect(),
            ProblemMeta::generic(),
        )
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `y = A x`.
    pub fn apply_form(&self, x: &[f64], y: &mut [f64]) {
        let a = &self.form_matrix;
        let cp = a.col_ptr();
        let ri = a.row_idx();
        let v = a.val();
        y.iter_mut().for_each(|e| *e = 0.0);
        for j in 0..self.dim() {
            let xj = x[j];
            for k in cp[j]..cp[j + 1] {
                y[ri[k]] += v[k] * xj;
            }
        }
    }

    pub fn rayleigh_quotient(&self, x: &[f64]) -> f64 {
        let mut ax = vec![0.0; x.len()];
        self.apply_form(x, &mut ax);
        let num: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().zip(&self.weights).map(|(a, w)| a * a * w).sum();
        num / den
    }

    /// `max |A - Aᵀ|` over stored entries.
    pub fn asymmetry(&self) -> f64 {
        let a = &self.form_matrix;
        let (cp, ri, v) = (a.col_ptr(), a.row_idx(), a.val());
        let mut worst: f64 = 0.0;
        for j in 0..self.dim() {
            for k in cp[j]..cp[j + 1] {
                let i = ri[k];
                let twin = (cp[i]..cp[i + 1]).find(|&q| ri[q] == j).map(|q| v[q]).unwrap_or(0.0);
                worst = worst.max((v[k] - twin).abs());
            }
        }
        worst
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let a = &self.form_matrix;
        let (cp, ri, v) = (a.col_ptr(), a.row_idx(), a.val());
        (0..self.dim())
            .map(|j| (cp[j]..cp[j + 1]).find(|&k| ri[k] == j).map(|k| v[k]).unwrap_or(0.0))
            .collect()
    }

    /// Row-major dense copy of `A`.
    pub fn dense_form(&self) -> Vec<f64> {
        let n = self.dim();
        let a = &self.form_matrix;
        let (cp, ri, v) = (a.col_ptr(), a.row_idx(), a.val());
        let mut d = vec![0.0; n * n];
        for j in 0..n {
            for k in cp[j]..cp[j + 1] {
                d[ri[k] * n + j] += v[k];
            }
        }
        d
    }

    /// Mesh coordinates of unknown `k`.
    pub fn coords(&self, k: usize) -> [f64; 2] {
        match &self.mesh {
            Mesh::Line { x0, h, .. } => [x0 + self.dofs[k] as f64 * h, 0.0],
            Mesh::Plane(g) => g.coords(self.dofs[k]),
        }
    }

    /// Writes `<stem>_A.mtx` and `<stem>_B.mtx` (symmetric coordinate, lower
    /// triangle, 1-based).
    pub fn write_matrix_market(&self, dir: &std::path::Path, stem: &str) -> Result<(), DiscretizeError> {
        mm::write_pair(self, dir, stem)
    }
}

/// Accumulates a symmetric matrix as diagonal plus strictly-lower entries.
pub(crate) struct SymBuilder {
    pub diag: Vec<f64>,
    pub lower: Vec<(usize, usize, f64)>,
}

impl SymBuilder {
    pub fn new(n: usize) -> Self {
        Self { diag: vec![0.0; n], lower: Vec::with_capacity(2 * n) }
    }

    pub fn couple(&mut self, i: usize, j: usize, v: f64) {
        let (a, b) = if i > j { (i, j) } else { (j, i) };
        self.lower.push((a, b, v));
    }

    pub fn finish(mut self) -> Vec<(usize, usize, f64)> {
        for (i, d) in self.diag.iter().enumerate() {
            self.lower.push((i, i, *d));
        }
        self.lower
    }
}

/// Unknown numbering for the active nodes of a grid.
pub(crate) fn active_nodes(grid: &Grid2D, domain: Domain, line: &DeltaLineSpec) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut dofs = Vec::new();
    let mut map = vec![None; grid.len()];
    for node in 0..grid.len() {
        let keep = match domain {
            Domain::Box => true,
            Domain::Tube { width } => line.distance(grid.coords(node)) < width,
        };
        if keep {
            map[node] = Some(dofs.len());
            dofs.push(node);
        }
    }
    (dofs, map)
}

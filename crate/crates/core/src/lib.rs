//! Spectral laboratory for Schrödinger operators `-Δ + V - α δ(x - Σ)` where
//! Σ is an asymptotically planar surface and `V` is a constant bias `V₀`
//! switched on one side of Σ.
//!
//! The crate is split the same way a computation flows:
//!
//! - [`transverse`]: the one dimensional operator across the surface, its
//!   threshold `μ`, Neumann-boxed ground energy, Hardy-type margins.
//! - [`geometry`]: cone, rooftop and plane charts with fundamental forms,
//!   principal curvatures, layer Jacobian and assumption probes.
//! - [`discretize`]: finite-difference quadratic forms for the cone's
//!   partial waves and for planar δ-polylines.
//! - [`eigensolve`]: shift-invert block Krylov-Schur, dense oracle,
//!   discrete-versus-continuum classification.
//! - [`experiments`]: scans, verdicts, CSV/JSON/SVG output.
//!
//! Units follow `ħ²/2m = 1`; lengths are dimensionless.

pub mod discretize;
pub mod eigensolve;
pub mod experiments;
pub mod geometry;
pub mod roots;
pub mod transverse;

pub use discretize::{EigenProblem, Grid2D};
pub use eigensolve::{EigResult, SolverOptions};
pub use transverse::{BiasSide, CouplingParams, Regime};

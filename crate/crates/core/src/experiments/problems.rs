//! Problem builders shared by the experiments.

use crate::discretize::{
    assemble_partial_wave_with, assemble_planar_delta_with, AssemblyOptions, BiasRegion, DeltaLineSpec,
    DiscretizeError, Domain, EigenProblem, Grid2D,
};
use crate::geometry::ConeSpec;
use crate::transverse::CouplingParams;

/// `m`-th partial wave of the cone with half-opening `theta`, on a band of
/// half-width `width` around a generator of arclength `length`.
pub fn cone_problem(
    theta: f64,
    m: i32,
    params: &CouplingParams,
    spacing: f64,
    length: f64,
    width: f64,
) -> Result<EigenProblem, DiscretizeError> {
    let spec = ConeSpec::new(theta).map_err(|e| DiscretizeError::InvalidGrid(e.to_string()))?;
    let grid = Grid2D::cone_aligned(theta, spacing, length, width)?;
    let opts = AssemblyOptions { domain: Domain::Tube { width } };
    let mut p = assemble_partial_wave_with(m, &spec, params, &grid, &opts)?;
    p.meta.box_size = length;
    Ok(p)
}

/// Broken line `z = |y| cot θ` with rays of arclength `length`; the bias
/// region is the wedge `z > |y| cot θ`.
pub fn broken_line_problem(
    theta: f64,
    params: &CouplingParams,
    spacing: f64,
    length: f64,
    width: f64,
) -> Result<EigenProblem, DiscretizeError> {
    let grid = Grid2D::broken_line_aligned(theta, spacing, length, width)?;
    let line = DeltaLineSpec::broken_line(theta, length, params.alpha)?;
    let wedge = BiasRegion::Sector { apex: [0.0, 0.0], axis: [0.0, 1.0], half_angle: theta };
    let opts = AssemblyOptions { domain: Domain::Tube { width } };
    let mut p = assemble_planar_delta_with(&line, params, &wedge, &grid, &opts)?;
    p.meta.theta = Some(theta);
    p.meta.box_size = length;
    Ok(p)
}

/// Straight line `y = 0` across the Dirichlet box `(-L/2, L/2) × (-W, W)`.
pub fn straight_line_problem(
    params: &CouplingParams,
    spacing: f64,
    length: f64,
    half_width: f64,
) -> Result<EigenProblem, DiscretizeError> {
    let nx = (length / spacing).round() as usize;
    let ny = 2 * (half_width / spacing).round() as usize;
    let grid = Grid2D::planar(0.5 * length, half_width, nx, ny)?;
    let line = DeltaLineSpec::new(vec![[-0.5 * length, 0.0], [0.5 * length, 0.0]], params.alpha)?;
    let upper = BiasRegion::HalfPlane { normal: [0.0, 1.0], offset: 0.0 };
    let mut p = assemble_planar_delta_with(&line, params, &upper, &grid, &AssemblyOptions::default())?;
    p.meta.box_size = length;
    Ok(p)
}

use super::{
    active_nodes, bias_node_value, delta_trace_weights, AssemblyOptions, BiasRegion, DeltaLineSpec, DiscretizeError,
    EigenProblem, Grid2D, Mesh, ProblemKind, ProblemMeta, SymBuilder,
};
use crate::geometry::ConeSpec;
use crate::transverse::CouplingParams;

/// Centrifugal potential `(4m² - 1)/(4r²)` of the `m`-th partial wave.
pub fn centrifugal_term(m: i32, r: f64) -> f64 {
    let m = m as f64;
    (4.0 * m * m - 1.0) / (4.0 * r * r)
}

/// Form of the `m`-th partial wave of the cone problem on the `(r, z)` half
/// plane, on the whole grid.
pub fn assemble_partial_wave(
    m: i32,
    spec: &ConeSpec,
    params: &CouplingParams,
    grid: &Grid2D,
) -> Result<EigenProblem, DiscretizeError> {
    assemble_partial_wave_with(m, spec, params, grid, &AssemblyOptions::default())
}

/// As [`assemble_partial_wave`], restricted to `opts.domain`.
///
/// The unknown is `ω = √r u`. The radial part is the conservative
/// cell-centred difference of `-(1/r)(r u')'` rewritten for `ω`; its
/// diagonal is `2/hr² + 1/(4r²)`, to which the centrifugal
/// `(4m² - 1)/(4r²)` is added. Along `z` it is the plain three-point
/// stencil. The generator `z = r cot θ` must run through nodes.
pub fn assemble_partial_wave_with(
    m: i32,
    spec: &ConeSpec,
    params: &CouplingParams,
    grid: &Grid2D,
    opts: &AssemblyOptions,
) -> Result<EigenProblem, DiscretizeError> {
    params.validate().map_err(|e| DiscretizeError::InvalidGrid(e.to_string()))?;
    if !grid.staggered || (grid.x0 - 0.5 * grid.hx).abs() > 1e-12 * grid.hx {
        return Err(DiscretizeError::InvalidGrid("radial axis must be staggered, r_i = (i + 1/2) hr".into()));
    }
    let theta = spec.theta;
    let cot = 1.0 / theta.tan();
    let top = grid.y(grid.ny - 1);
    let tol = 1e-12 * grid.extent();
    // last radial index whose generator point is still inside the grid
    let last = (0..grid.nx).rev().find(|&i| grid.x(i) * cot <= top + tol).ok_or(DiscretizeError::EmptyDomain)?;
    let r_end = grid.x(last);
    let line = DeltaLineSpec::new(vec![[0.0, 0.0], [r_end, r_end * cot]], params.alpha)?;
    let trace = delta_trace_weights(grid, &line)?;

    let (dofs, map) = active_nodes(grid, opts.domain, &line);
    if dofs.is_empty() {
        return Err(DiscretizeError::EmptyDomain);
    }
    let n = dofs.len();
    let (hr, hz) = (grid.hx, grid.hy);
    let area = grid.cell_area();
    let region = BiasRegion::cone_interior(theta);
    let on_tol = 1e-9 * hr.min(hz);
    let mut b = SymBuilder::new(n);
    let mut any_bias = false;

    for (k, &node) in dofs.iter().enumerate() {
        let (i, j) = (node / grid.ny, node % grid.ny);
        let r = grid.x(i);
        let z = grid.y(j);
        let v = bias_node_value([r, z], &region, params.bias_side, params.v0, on_tol);
        any_bias |= region.cell_fraction([r, z], on_tol) > 0.0;
        b.diag[k] = area * (2.0 / (hr * hr) + 1.0 / (4.0 * r * r) + centrifugal_term(m, r) + 2.0 / (hz * hz) + v);
        if i + 1 < grid.nx {
            if let Some(q) = map[grid.index(i + 1, j)] {
                let rn = grid.x(i + 1);
                let face = r + 0.5 * hr;
                b.couple(k, q, -area * face / (hr * hr * (r * rn).sqrt()));
            }
        }
        if j + 1 < grid.ny {
            if let Some(q) = map[grid.index(i, j + 1)] {
                b.couple(k, q, -area / (hz * hz));
            }
        }
    }
    if !any_bias {
        return Err(DiscretizeError::EmptyBiasRegion);
    }
    let mut delta_nodes = 0;
    for (node, w) in trace {
        if let Some(k) = map[node] {
            b.diag[k] -= params.alpha * w;
            delta_nodes += 1;
        }
    }
    let meta = ProblemMeta {
        kind: ProblemKind::PartialWave,
        m: Some(m),
        theta: Some(theta),
        params: Some(*params),
        box_size: line.length(),
        spacing: hr,
        delta_nodes,
    };
    EigenProblem::from_lower_triplets(n, &b.finish(), vec![area; n], Mesh::Plane(*grid), dofs, meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretize::Domain;
    use crate::transverse::BiasSide;
    use std::f64::consts::FRAC_PI_4;

    fn params(v0: f64) -> CouplingParams {
        CouplingParams::new(1.0, v0, BiasSide::Interior).unwrap()
    }

    #[test]
    fn centrifugal_signs() {
        assert!((centrifugal_term(1, 0.5) - 3.0).abs() < 1e-15);
        assert!((centrifugal_term(0, 0.5) + 1.0).abs() < 1e-15);
        let g = Grid2D::cone_aligned(FRAC_PI_4, 0.5, 4.0, 2.0).unwrap();
        let spec = ConeSpec::new(FRAC_PI_4).unwrap();
        let a0 = assemble_partial_wave(0, &spec, &params(0.3), &g).unwrap();
        let a1 = assemble_partial_wave(1, &spec, &params(0.3), &g).unwrap();
        let (d0, d1) = (a0.diagonal(), a1.diagonal());
        for k in 0..a0.dim() {
            let r = a0.coords(k)[0];
            let expect = g.cell_area() * (centrifugal_term(1, r) - centrifugal_term(0, r));
            assert!((d1[k] - d0[k] - expect).abs() < 1e-12 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn symmetric_by_construction() {
        let g = Grid2D::cone_aligned(0.6, 0.3, 6.0, 3.0).unwrap();
        let p = assemble_partial_wave_with(
            2,
            &ConeSpec::new(0.6).unwrap(),
            &params(0.5),
            &g,
            &AssemblyOptions { domain: Domain::Tube { width: 2.0 } },
        )
        .unwrap();
        assert_eq!(p.asymmetry(), 0.0);
        assert!(p.dim() < g.len());
        assert!(p.meta.delta_nodes > 0);
    }

    #[test]
    fn misaligned_grid_rejected() {
        let g = Grid2D::staggered_half_plane(5.0, 5.0, 25, 37).unwrap();
        let r = assemble_partial_wave(0, &ConeSpec::new(0.6).unwrap(), &params(0.0), &g);
        assert!(matches!(r, Err(DiscretizeError::MisalignedDelta { .. })));
    }

    #[test]
    fn unstaggered_rejected() {
        let g = Grid2D::new(0.0, 0.1, 10, -1.0, 0.1, 20).unwrap();
        assert!(assemble_partial_wave(0, &ConeSpec::new(FRAC_PI_4).unwrap(), &params(0.0), &g).is_err());
    }

    #[test]
    fn trial_below_threshold() {
        // a bump hugging the tip region has Rayleigh quotient below -1/4
        let g = Grid2D::cone_aligned(FRAC_PI_4, 0.2, 30.0, 10.0).unwrap();
        let p = assemble_partial_wave(0, &ConeSpec::new(FRAC_PI_4).unwrap(), &params(0.0), &g).unwrap();
        let x: Vec<f64> = (0..p.dim())
            .map(|k| {
                let [r, z] = p.coords(k);
                let s = (r + z) / 2f64.sqrt();
                let t = (z - r) / 2f64.sqrt();
                r.sqrt() * (-0.5 * t.abs()).exp() * (-(s / 12.0).powi(2)).exp()
            })
            .collect();
        assert!(p.rayleigh_quotient(&x) < 0.0);
    }
}

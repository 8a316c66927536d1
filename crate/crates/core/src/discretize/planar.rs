use super::{
    active_nodes, bias_node_value, delta_trace_weights, AssemblyOptions, BiasRegion, DeltaLineSpec, DiscretizeError,
    EigenProblem, Grid2D, Mesh, ProblemKind, ProblemMeta, SymBuilder,
};
use crate::transverse::CouplingParams;

/// Planar form `‖∇ψ‖² + (ψ, Vψ) - α ∫|ψ|² ds` on the whole grid.
pub fn assemble_planar_delta(
    spec: &DeltaLineSpec,
    params: &CouplingParams,
    bias_region: &BiasRegion,
    grid: &Grid2D,
) -> Result<EigenProblem, DiscretizeError> {
    assemble_planar_delta_with(spec, params, bias_region, grid, &AssemblyOptions::default())
}

/// As [`assemble_planar_delta`], on `opts.domain`. The coupling is taken
/// from `spec.alpha`; `params` supplies `V₀` and the biased side.
pub fn assemble_planar_delta_with(
    spec: &DeltaLineSpec,
    params: &CouplingParams,
    bias_region: &BiasRegion,
    grid: &Grid2D,
    opts: &AssemblyOptions,
) -> Result<EigenProblem, DiscretizeError> {
    let trace = delta_trace_weights(grid, spec)?;
    let (dofs, map) = active_nodes(grid, opts.domain, spec);
    if dofs.is_empty() {
        return Err(DiscretizeError::EmptyDomain);
    }
    let n = dofs.len();
    let (hx, hy) = (grid.hx, grid.hy);
    let area = grid.cell_area();
    let on_tol = 1e-9 * hx.min(hy);
    let mut b = SymBuilder::new(n);
    let mut any_bias = false;
    for (k, &node) in dofs.iter().enumerate() {
        let (i, j) = (node / grid.ny, node % grid.ny);
        let p = [grid.x(i), grid.y(j)];
        any_bias |= bias_region.cell_fraction(p, on_tol) > 0.0;
        let v = bias_node_value(p, bias_region, params.bias_side, params.v0, on_tol);
        b.diag[k] = area * (2.0 / (hx * hx) + 2.0 / (hy * hy) + v);
        if i + 1 < grid.nx {
            if let Some(q) = map[grid.index(i + 1, j)] {
                b.couple(k, q, -area / (hx * hx));
            }
        }
        if j + 1 < grid.ny {
            if let Some(q) = map[grid.index(i, j + 1)] {
                b.couple(k, q, -area / (hy * hy));
            }
        }
    }
    if !any_bias {
        return Err(DiscretizeError::EmptyBiasRegion);
    }
    let mut delta_nodes = 0;
    for (node, w) in trace {
        if let Some(k) = map[node] {
            b.diag[k] -= spec.alpha * w;
            delta_nodes += 1;
        }
    }
    let meta = ProblemMeta {
        kind: ProblemKind::Planar,
        m: None,
        theta: None,
        params: Some(CouplingParams { alpha: spec.alpha.max(f64::MIN_POSITIVE), ..*params }),
        box_size: spec.length(),
        spacing: hx,
        delta_nodes,
    };
    EigenProblem::from_lower_triplets(n, &b.finish(), vec![area; n], Mesh::Plane(*grid), dofs, meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transverse::BiasSide;

    #[test]
    fn empty_region_rejected() {
        let g = Grid2D::planar(2.0, 2.0, 8, 8).unwrap();
        let line = DeltaLineSpec::new(vec![[-2.0, 0.0], [2.0, 0.0]], 1.0).unwrap();
        let p = CouplingParams::new(1.0, 0.5, BiasSide::Interior).unwrap();
        let far = BiasRegion::HalfPlane { normal: [0.0, 1.0], offset: 10.0 };
        assert!(matches!(assemble_planar_delta(&line, &p, &far, &g), Err(DiscretizeError::EmptyBiasRegion)));
    }

    #[test]
    fn straight_line_form() {
        let g = Grid2D::planar(2.0, 2.0, 8, 8).unwrap();
        let line = DeltaLineSpec::new(vec![[-2.0, 0.0], [2.0, 0.0]], 1.0).unwrap();
        let p = CouplingParams::new(1.0, 0.0, BiasSide::Interior).unwrap();
        let up = BiasRegion::HalfPlane { normal: [0.0, 1.0], offset: 0.0 };
        let pr = assemble_planar_delta(&line, &p, &up, &g).unwrap();
        assert_eq!(pr.asymmetry(), 0.0);
        assert_eq!(pr.meta.delta_nodes, 7);
        // constant vector: kinetic part only feels the Dirichlet frame
        let ones = vec![1.0; pr.dim()];
        let q = pr.rayleigh_quotient(&ones);
        let boundary = (2.0 * 7.0 + 2.0 * 7.0) * 1.0 / 0.25;
        // δ weights cover the whole segment, end stubs included
        let expect = (boundary * 0.25 - 4.0) / (49.0 * 0.25);
        assert!((q - expect).abs() < 1e-12, "{q} {expect}");
    }
}

use leaky_surface::discretize::*;
use leaky_surface::experiments::{broken_line_problem, cone_problem, straight_line_problem};
use leaky_surface::geometry::ConeSpec;
use leaky_surface::transverse::{BiasSide, CouplingParams};
use proptest::prelude::*;

fn params(v0: f64, side: BiasSide) -> CouplingParams {
    CouplingParams::new(1.0, v0, side).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn partial_wave_forms_symmetric(m in 0i32..4, v0 in 0.0f64..2.0, theta in 0.3f64..1.2, ext in any::<bool>()) {
        let side = if ext { BiasSide::Exterior } else { BiasSide::Interior };
        let grid = Grid2D::cone_aligned(theta, 0.3, 6.0, 3.0).unwrap();
        let p = assemble_partial_wave(m, &ConeSpec::new(theta).unwrap(), &params(v0, side), &grid).unwrap();
        prop_assert_eq!(p.asymmetry(), 0.0);
        prop_assert!(p.weights.iter().all(|w| *w > 0.0));
    }

    #[test]
    fn trace_weights_sum_to_in_grid_length(theta in 0.2f64..1.3, n in 10usize..60) {
        let hy = 0.1;
        let g = Grid2D::broken_line_aligned(theta, hy, n as f64 * hy / theta.sin() + 1.0, 1.0).unwrap();
        let len = n as f64 * hy / theta.sin();
        let spec = DeltaLineSpec::broken_line(theta, len, 1.0).unwrap();
        let w = delta_trace_weights(&g, &spec).unwrap();
        let total: f64 = w.iter().map(|p| p.1).sum();
        prop_assert!((total - spec.length()).abs() < 1e-9 * spec.length());
    }

    #[test]
    fn bias_is_monotone_in_v0(v0 in 0.0f64..2.0, dv in 0.0f64..1.0) {
        let grid = Grid2D::cone_aligned(0.7, 0.4, 5.0, 2.0).unwrap();
        let spec = ConeSpec::new(0.7).unwrap();
        let a = assemble_partial_wave(0, &spec, &params(v0, BiasSide::Interior), &grid).unwrap();
        let b = assemble_partial_wave(0, &spec, &params(v0 + dv, BiasSide::Interior), &grid).unwrap();
        for (x, y) in a.diagonal().iter().zip(b.diagonal()) {
            prop_assert!(y >= *x - 1e-12);
        }
    }
}

#[test]
fn builders_produce_tubes() {
    let p = params(0.0, BiasSide::Interior);
    let cone = cone_problem(std::f64::consts::FRAC_PI_4, 0, &p, 0.5, 10.0, 3.0).unwrap();
    let bl = broken_line_problem(std::f64::consts::FRAC_PI_4, &p, 0.5, 10.0, 3.0).unwrap();
    let sl = straight_line_problem(&p, 0.5, 10.0, 3.0).unwrap();
    for pr in [&cone, &bl, &sl] {
        assert_eq!(pr.asymmetry(), 0.0);
        assert!(pr.meta.delta_nodes > 0);
    }
    assert_eq!(sl.dim(), 19 * 11);
}

#[test]
fn matrix_market_round_trip() {
    let p = straight_line_problem(&params(0.0, BiasSide::Interior), 1.0, 6.0, 2.0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    p.write_matrix_market(dir.path(), "line").unwrap();
    let (n, entries) = read_matrix_market(&dir.path().join("line_A.mtx")).unwrap();
    assert_eq!(n, p.dim());
    let dense = p.dense_form();
    for e in entries {
        assert_eq!(e.value, dense[e.row * n + e.col]);
    }
}

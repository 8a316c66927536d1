use leaky_surface::geometry::*;
use proptest::prelude::*;
use std::f64::consts::FRAC_PI_2;

proptest! {
    #[test]
    fn cone_is_flat_off_tip(theta in 0.1f64..(FRAC_PI_2 - 0.1), r in 0.01f64..50.0, phi in 0.0f64..6.283) {
        let surf = cone_surface(&ConeSpec::new(theta).unwrap());
        let s = [r * phi.cos(), r * phi.sin()];
        let c = surf.curvatures(s).unwrap();
        let k = c.k1.abs().max(c.k2.abs());
        prop_assert!(c.gauss.abs() <= 1e-10 * k.max(1.0) * k.max(1.0));
        prop_assert!((k - 1.0 / (theta.tan() * r)).abs() <= 1e-9 * k);
        prop_assert_eq!(surf.layer_jacobian(s, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn exterior_side_jacobian_at_least_one(theta in 0.1f64..(FRAC_PI_2 - 0.1), r in 0.05f64..20.0, u in -5.0f64..0.0) {
        let surf = cone_surface(&ConeSpec::new(theta).unwrap());
        prop_assert!(surf.layer_jacobian([r, 0.0], u).unwrap() >= 1.0);
    }

    #[test]
    fn analytic_matches_finite_differences(theta in 0.2f64..1.3, x in 0.5f64..5.0, y in -5.0f64..5.0) {
        let surf = cone_surface(&ConeSpec::new(theta).unwrap());
        let c = surf.curvatures([x, y]).unwrap();
        let fd = fd_principal_curvatures(surf.chart.as_ref(), [x, y], 1e-3);
        prop_assert!((c.k2 - fd.k2).abs() < 1e-5 * c.k2.max(1.0));
    }

    #[test]
    fn rooftop_caps_are_homothetic(z in 1.0f64..4.0, t in 0.0f64..1.0) {
        let chart_spec = RooftopSpec::new(4.0, 0.5, 0.0).unwrap();
        let angle = -FRAC_PI_2 + t * std::f64::consts::PI;
        let chart = RooftopChart { spec: chart_spec };
        let a = chart.cap_arc(z, &[angle])[0];
        let b = chart.cap_arc(2.0 * z, &[angle])[0];
        let (ra, rb) = ((a[0] - 2.0).hypot(a[1]), (b[0] - 2.0).hypot(b[1]));
        prop_assert!((rb / ra - 2.0).abs() < 1e-8);
    }
}

#[test]
fn fd_oracle_second_order() {
    let surf = cone_surface(&ConeSpec::new(0.7).unwrap());
    for s in [[1.0, 0.5], [3.0, -2.0], [-0.4, 0.9]] {
        assert!(fd_order(surf.chart.as_ref(), s, 1e-2) > 1.8);
    }
}

#[test]
fn config_builds_each_kind() {
    for text in ["kind = \"cone\"\ntheta = 0.5", "kind = \"rooftop\"\ntheta = 0.5\nL = 3.0", "kind = \"plane\""] {
        let spec = SurfaceSpec::from_toml(text).unwrap();
        assert!(spec.build().is_ok());
    }
    assert!(SurfaceSpec::from_toml("kind = \"cone\"\ntheta = 2.0").unwrap().build().is_err());
}

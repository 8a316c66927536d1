use approx::assert_relative_eq;
use leaky_surface::roots::bisect;
use leaky_surface::transverse::*;
use proptest::prelude::*;

fn p(alpha: f64, v0: f64) -> CouplingParams {
    CouplingParams::new(alpha, v0, BiasSide::Interior).unwrap()
}

proptest! {
    #[test]
    fn threshold_scales_with_c_squared(alpha in 0.1f64..5.0, frac in 0.0f64..2.0, c in 0.2f64..5.0) {
        let q = p(alpha, frac * alpha * alpha);
        let mu = essential_threshold(&q);
        let scaled = essential_threshold(&q.scaled(c));
        prop_assert!((scaled - c * c * mu).abs() <= 1e-10 * (c * c * mu).abs().max(1e-300));
    }

    #[test]
    fn threshold_nonpositive_and_increasing(alpha in 0.1f64..5.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let a2 = alpha * alpha;
        let m_lo = essential_threshold(&p(alpha, lo * a2));
        let m_hi = essential_threshold(&p(alpha, hi * a2));
        prop_assert!(m_lo <= 0.0 && m_lo <= m_hi);
        prop_assert!(m_lo >= -a2 / 4.0);
    }

    #[test]
    fn bound_state_iff_subcritical(alpha in 0.1f64..5.0, frac in 0.0f64..3.0) {
        let q = p(alpha, frac * alpha * alpha);
        match q.regime() {
            Regime::Subcritical => prop_assert_eq!(bound_state_energy(&q), Some(essential_threshold(&q))),
            _ => {
                prop_assert_eq!(bound_state_energy(&q), None);
                prop_assert_eq!(essential_threshold(&q), 0.0);
            }
        }
    }

    #[test]
    fn neumann_gap_inside_bound(alpha in 0.5f64..3.0, frac in 0.0f64..0.9, dscale in 1.0f64..6.0) {
        let q = p(alpha, frac * alpha * alpha);
        let d = dscale * NeumannBoxParams::d0(alpha);
        let gap = neumann_box_gap(&q, &NeumannBoxParams::new(d).unwrap(), 1e-14).unwrap().unwrap();
        prop_assert!(gap > 0.0 && gap < C0 / d, "gap {} bound {}", gap, C0 / d);
    }

    #[test]
    fn hardy_holds_on_random_trials(seed in 0u64..10_000, v0 in 0.1f64..5.0) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let t = HardyTrial::random(&mut rng);
        let m = hardy_margin(&t.sample(40.0, 0.01), 0.01, v0).unwrap();
        prop_assert!(m.holds(), "{:?}", m);
    }
}

#[test]
fn neumann_root_agrees_with_plain_bisection() {
    let q = p(1.0, 0.5);
    for d in [5.0, 8.0, 12.0] {
        let e = neumann_box_ground_energy(&q, &NeumannBoxParams::new(d).unwrap(), 1e-14).unwrap().unwrap();
        let mu = essential_threshold(&q);
        let oracle = bisect(|x| spectral_condition(&q, d, x), mu - 1.0, mu - 1e-14, 1e-15);
        assert_relative_eq!(e, oracle, epsilon = 1e-12);
    }
}

#[test]
fn supercritical_box_has_no_negative_state() {
    let q = p(1.0, 4.0);
    assert_eq!(neumann_box_gap(&q, &NeumannBoxParams::new(10.0).unwrap(), 1e-14).unwrap(), None);
}

#[test]
fn invalid_coupling_rejected() {
    assert!(CouplingParams::new(0.0, 0.0, BiasSide::Interior).is_err());
    assert!(CouplingParams::new(1.0, -0.1, BiasSide::Exterior).is_err());
    assert!(CouplingParams::new(f64::NAN, 0.0, BiasSide::Interior).is_err());
}

use super::{first_form, Curvatures, SurfaceGeometry};
use nalgebra::SymmetricEigen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Sampling plan for [`verify_assumptions`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProbePlan {
    /// chart radii of the curvature shells
    pub radii: Vec<f64>,
    /// points per shell
    pub shell_points: usize,
    /// random pairs for the bi-Lipschitz estimate
    pub pairs: usize,
    /// pairs are drawn in the chart disc of this radius
    pub pair_radius: f64,
    /// exclusion distance from the singular set
    pub exclusion: f64,
    pub seed: u64,
}

impl Default for ProbePlan {
    fn default() -> Self {
        Self {
            radii: vec![1.0, 2.0, 4.0, 8.0, 16.0, 32.0],
            shell_points: 256,
            pairs: 100_000,
            pair_radius: 10.0,
            exclusion: 1e-3,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureShell {
    pub radius: f64,
    pub max_abs_curvature: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub surface: String,
    /// smallest `|Σ(s) - Σ(t)| / |s - t|` over the sampled pairs; checked
    /// against the chart's declared lower bound
    pub bilipschitz_c: f64,
    pub bilipschitz_bound: Option<f64>,
    pub bilipschitz_ok: bool,
    pub curvature_shells: Vec<CurvatureShell>,
    /// least-squares slope of `log sup|k|` against `log R`
    pub curvature_decay_exponent: f64,
    pub curvature_decays: bool,
    pub declared_ellipticity: (f64, f64),
    pub observed_ellipticity: (f64, f64),
    pub ellipticity_ok: bool,
    pub max_det_trace_mismatch: f64,
    pub unchecked: Vec<String>,
}

impl AssumptionReport {
    pub fn all_ok(&self) -> bool {
        self.bilipschitz_ok && self.curvature_decays && self.ellipticity_ok
    }
}

fn max_abs(c: &Curvatures) -> f64 {
    c.k1.abs().max(c.k2.abs())
}

/// Samples a surface against the standing assumptions: bi-Lipschitz chart,
/// curvature decay at large geodesic distance (the chart radius stands in
/// for it), uniform ellipticity, and the det/trace consistency of `K`, `M`.
/// Violations are recorded, never raised.
pub fn verify_assumptions(surf: &SurfaceGeometry, plan: &ProbePlan) -> AssumptionReport {
    let chart = surf.chart.as_ref();
    let sing = chart.singular_set();
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let usable = |s: [f64; 2]| sing.distance(s) >= plan.exclusion;

    let mut c_min = f64::INFINITY;
    let mut drawn = 0;
    while drawn < plan.pairs {
        let s = disc_point(&mut rng, plan.pair_radius);
        let t = disc_point(&mut rng, plan.pair_radius);
        let d = (s[0] - t[0]).hypot(s[1] - t[1]);
        if d == 0.0 {
            continue;
        }
        drawn += 1;
        let ratio = (chart.point(s) - chart.point(t)).norm() / d;
        c_min = c_min.min(ratio);
    }

    let (dm, dp) = chart.ellipticity();
    let mut obs = (f64::INFINITY, f64::NEG_INFINITY);
    let mut mismatch: f64 = 0.0;
    let mut shells = Vec::new();
    for &r in &plan.radii {
        let mut sup: f64 = 0.0;
        for i in 0..plan.shell_points {
            let phi = 2.0 * std::f64::consts::PI * (i as f64 + rng.random::<f64>()) / plan.shell_points as f64;
            let s = [r * phi.cos(), r * phi.sin()];
            if !usable(s) {
                continue;
            }
            let j = chart.jet(s);
            let g = first_form(&j);
            let ev = SymmetricEigen::new(g).eigenvalues;
            obs.0 = obs.0.min(ev.min());
            obs.1 = obs.1.max(ev.max());
            let c = surf.curvatures(s).expect("sample outside the exclusion tube");
            let scale = max_abs(&c).max(1e-300);
            let dk = (c.k1 * c.k2 - c.gauss).abs() / (scale * scale);
            let dm_ = (0.5 * (c.k1 + c.k2) - c.mean).abs() / scale;
            mismatch = mismatch.max(dk).max(dm_);
            sup = sup.max(max_abs(&c));
        }
        shells.push(CurvatureShell { radius: r, max_abs_curvature: sup });
    }

    let exponent = decay_slope(&shells);
    // past the outermost peak (compact features may sit inside it) the
    // shell suprema must not grow
    let peak = shells
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, s)| if s.max_abs_curvature >= acc.1 { (i, s.max_abs_curvature) } else { acc })
        .0;
    let flat = shells.iter().all(|s| s.max_abs_curvature == 0.0);
    let decays = flat
        || (shells[peak..].windows(2).all(|w| w[1].max_abs_curvature <= w[0].max_abs_curvature * (1.0 + 1e-9))
            && peak + 1 < shells.len()
            && exponent < 0.0);

    let tol = 1e-12;
    AssumptionReport {
        surface: chart.name().to_string(),
        bilipschitz_c: c_min,
        bilipschitz_bound: chart.bilipschitz_bound(),
        bilipschitz_ok: c_min > 0.0 && chart.bilipschitz_bound().is_none_or(|b| c_min >= b * (1.0 - tol)),
        curvature_shells: shells,
        curvature_decay_exponent: exponent,
        curvature_decays: decays,
        declared_ellipticity: (dm, dp),
        observed_ellipticity: obs,
        ellipticity_ok: obs.0 >= dm * (1.0 - tol) && obs.1 <= dp * (1.0 + tol),
        max_det_trace_mismatch: mismatch,
        unchecked: vec![
            "topological equivalence to a plane".into(),
            "regular ends of the singular curves (C1 prolongation)".into(),
        ],
    }
}

fn disc_point(rng: &mut ChaCha8Rng, radius: f64) -> [f64; 2] {
    let r = radius * rng.random::<f64>().sqrt();
    let phi = 2.0 * std::f64::consts::PI * rng.random::<f64>();
    [r * phi.cos(), r * phi.sin()]
}

fn decay_slope(shells: &[CurvatureShell]) -> f64 {
    let pts: Vec<(f64, f64)> = shells
        .iter()
        .filter(|s| s.max_abs_curvature > 0.0)
        .map(|s| (s.radius.ln(), s.max_abs_curvature.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NEG_INFINITY;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{cone_surface, ConeSpec, PlaneChart};
    use std::f64::consts::PI;

    #[test]
    fn cone_report() {
        let th = PI / 3.0;
        let plan = ProbePlan { pairs: 20_000, ..Default::default() };
        let r = verify_assumptions(&cone_surface(&ConeSpec::new(th).unwrap()), &plan);
        assert!(r.bilipschitz_c < 1.0 && r.bilipschitz_c >= th.sin() - 1e-12);
        assert!((r.curvature_decay_exponent + 1.0).abs() < 1e-6);
        assert!(r.all_ok());
    }

    #[test]
    fn plane_report() {
        let plan = ProbePlan { pairs: 1000, ..Default::default() };
        let r = verify_assumptions(&PlaneChart::surface(), &plan);
        assert!((r.bilipschitz_c - 1.0).abs() < 1e-12);
        assert!(r.curvature_shells.iter().all(|s| s.max_abs_curvature == 0.0));
        assert!(r.all_ok());
    }

    #[test]
    fn rooftop_report() {
        let spec = crate::geometry::RooftopSpec::new(4.0, 0.5, 0.3).unwrap();
        let plan = ProbePlan { pairs: 5000, ..Default::default() };
        let r = verify_assumptions(&crate::geometry::rooftop_surface(&spec).unwrap(), &plan);
        assert!(r.bilipschitz_c >= 1.0);
        assert!(r.curvature_decay_exponent < 0.0);
        assert!(r.all_ok(), "{r:?}");
    }
}

use super::{Chart, ChartJet, GeometryError, SingularSet, SurfaceGeometry};
use crate::roots::{bisect_secant, RootTol};
use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

/// Rooftop: a wedge of half-angle `θ` along a ridge of length `L`, closed at
/// both ends by half cones, so every horizontal cut `Γ_z` is two segments
/// `y = ±z tan θ, |x| ≤ L/2` joined by semicircles of radius `z tan θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RooftopSpec {
    #[serde(rename = "L")]
    pub length: f64,
    pub theta: f64,
    #[serde(default)]
    pub smoothing_radius: f64,
}

impl RooftopSpec {
    pub fn new(length: f64, theta: f64, smoothing_radius: f64) -> Result<Self, GeometryError> {
        let s = Self { length, theta, smoothing_radius };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(GeometryError::InvalidLength(self.length));
        }
        if !(self.theta > 0.0 && self.theta < std::f64::consts::FRAC_PI_2) {
            return Err(GeometryError::InvalidAngle(self.theta));
        }
        let limit = 0.5 * self.length;
        if !(self.smoothing_radius >= 0.0 && self.smoothing_radius <= limit) {
            return Err(GeometryError::InvalidSmoothing { radius: self.smoothing_radius, limit });
        }
        Ok(())
    }
}

/// Graph chart `z = cot θ · D(x, y)`, `D = √(S(|x| - L/2)² + y²)`.
///
/// `S(t) = max(t, 0)` for the sharp surface. With fillet radius `w > 0`,
/// `S` is the C² convex ramp with `S'' = 3/(4w) (1 - (t/w)²)` on `[-w, w]`,
/// which removes the curvature jump across the lines `|x| = L/2`.
#[derive(Debug, Clone, Copy)]
pub struct RooftopChart {
    pub spec: RooftopSpec,
}

impl RooftopChart {
    // (S, S', S'')
    fn ramp(&self, t: f64) -> (f64, f64, f64) {
        let w = self.spec.smoothing_radius;
        if w == 0.0 {
            return if t > 0.0 { (t, 1.0, 0.0) } else { (0.0, 0.0, 0.0) };
        }
        if t <= -w {
            (0.0, 0.0, 0.0)
        } else if t >= w {
            (t, 1.0, 0.0)
        } else {
            let s2 = 0.75 / w * (1.0 - (t / w).powi(2));
            let s1 = 0.75 / w * (t + w) - (t.powi(3) + w.powi(3)) / (4.0 * w.powi(3));
            let s0 = 0.375 / w * (t + w).powi(2)
                - (0.25 * t.powi(4) + w.powi(3) * t + 0.75 * w.powi(4)) / (4.0 * w.powi(3));
            (s0, s1, s2)
        }
    }

    /// `D` with its first and second derivatives `(D, Dx, Dy, Dxx, Dxy, Dyy)`.
    fn dist(&self, x: f64, y: f64) -> [f64; 6] {
        let sigma = if x < 0.0 { -1.0 } else { 1.0 };
        let (a, ap, app) = self.ramp(x.abs() - 0.5 * self.spec.length);
        let d = a.hypot(y);
        let d3 = d * d * d;
        let aap = a * ap;
        [
            d,
            aap * sigma / d,
            y / d,
            (ap * ap + a * app) / d - aap * aap / d3,
            -aap * sigma * y / d3,
            a * a / d3,
        ]
    }

    /// Height function of the surface.
    pub fn height(&self, x: f64, y: f64) -> f64 {
        self.dist(x, y)[0] / self.spec.theta.tan()
    }

    /// Points of the cut `Γ_z` on the end cap at `x > 0`, found by root
    /// finding along rays from the arc centre `(L/2, 0)` at the given polar
    /// angles (in `[-π/2, π/2]`).
    pub fn cap_arc(&self, z: f64, angles: &[f64]) -> Vec<[f64; 2]> {
        let c = 0.5 * self.spec.length;
        let r_max = 2.0 * z * self.spec.theta.tan() + self.spec.smoothing_radius + 1.0;
        angles
            .iter()
            .map(|&phi| {
                let (s, co) = phi.sin_cos();
                let f = |r: f64| self.height(c + r * co, r * s) - z;
                let r = bisect_secant(f, 0.0, r_max, RootTol { abs: 1e-15, ..Default::default() })
                    .expect("cut crosses the ray");
                [c + r * co, r * s]
            })
            .collect()
    }
}

impl Chart for RooftopChart {
    fn name(&self) -> &'static str {
        "rooftop"
    }

    fn point(&self, s: [f64; 2]) -> Vector3<f64> {
        Vector3::new(s[0], s[1], self.height(s[0], s[1]))
    }

    fn jet(&self, s: [f64; 2]) -> ChartJet {
        let k = 1.0 / self.spec.theta.tan();
        let [d, dx, dy, dxx, dxy, dyy] = self.dist(s[0], s[1]);
        ChartJet {
            point: Vector3::new(s[0], s[1], k * d),
            d1: Vector3::new(1.0, 0.0, k * dx),
            d2: Vector3::new(0.0, 1.0, k * dy),
            d11: Vector3::new(0.0, 0.0, k * dxx),
            d12: Vector3::new(0.0, 0.0, k * dxy),
            d22: Vector3::new(0.0, 0.0, k * dyy),
        }
    }

    /// The ridge `{|x| ≤ L/2, y = 0}`; with a fillet only its inner part is
    /// truly non-smooth, the whole segment is excluded anyway.
    fn singular_set(&self) -> SingularSet {
        let h = 0.5 * self.spec.length;
        SingularSet::Segments(vec![[[-h, 0.0], [h, 0.0]]])
    }

    // g = I + cot²θ ∇D∇Dᵀ with |∇D| ≤ 1
    fn ellipticity(&self) -> (f64, f64) {
        (1.0, 1.0 / self.spec.theta.sin().powi(2))
    }

    fn bilipschitz_bound(&self) -> Option<f64> {
        Some(1.0)
    }
}

pub fn rooftop_surface(spec: &RooftopSpec) -> Result<SurfaceGeometry, GeometryError> {
    spec.validate()?;
    Ok(SurfaceGeometry::new(Box::new(RooftopChart { spec: *spec })))
}

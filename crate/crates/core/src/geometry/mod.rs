//! Surface charts, fundamental forms and curvature.
//!
//! A chart maps a parameter point `s = (s₁, s₂)` to `Σ(s) ∈ ℝ³`. The unit
//! normal is `Σ₁ × Σ₂ / |Σ₁ × Σ₂|`; for the built-in surfaces it points to
//! the interior (upper) side, so `u > 0` in the layer Jacobian means the
//! interior and `u < 0` the exterior.

mod assumptions;
mod config;
mod cone;
mod fd;
mod plane;
mod rooftop;

pub use assumptions::{verify_assumptions, AssumptionReport, CurvatureShell, ProbePlan};
pub use config::SurfaceSpec;
pub use cone::{cone_surface, ConeChart, ConeSpec};
pub use fd::{fd_principal_curvatures, fd_order};
pub use plane::PlaneChart;
pub use rooftop::{rooftop_surface, RooftopChart, RooftopSpec};

use nalgebra::{Matrix2, SymmetricEigen, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("invalid opening angle theta = {0} (need 0 < theta < pi/2)")]
    InvalidAngle(f64),
    #[error("invalid ridge length L = {0}")]
    InvalidLength(f64),
    #[error("smoothing radius {radius} exceeds the feasible {limit}")]
    InvalidSmoothing { radius: f64, limit: f64 },
    #[error("point ({0}, {1}) lies in the singular set")]
    SingularPoint(f64, f64),
    #[error("config: {0}")]
    Config(String),
}

/// Where a chart fails to be smooth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SingularSet {
    None,
    /// isolated points (the family 𝒫)
    Points(Vec<[f64; 2]>),
    /// straight segments in the parameter plane (the family 𝒞)
    Segments(Vec<[[f64; 2]; 2]>),
}

impl SingularSet {
    /// Chart-plane distance from `s` to the set (`∞` if empty).
    pub fn distance(&self, s: [f64; 2]) -> f64 {
        match self {
            SingularSet::None => f64::INFINITY,
            SingularSet::Points(ps) => {
                ps.iter().map(|p| (s[0] - p[0]).hypot(s[1] - p[1])).fold(f64::INFINITY, f64::min)
            }
            SingularSet::Segments(segs) => segs
                .iter()
                .map(|[a, b]| point_segment_distance(s, *a, *b))
                .fold(f64::INFINITY, f64::min),
        }
    }
}

pub(crate) fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p[0] - a[0] - t * dx).hypot(p[1] - a[1] - t * dy)
}

/// First and second chart derivatives at a point.
#[derive(Debug, Clone, Copy)]
pub struct ChartJet {
    pub point: Vector3<f64>,
    pub d1: Vector3<f64>,
    pub d2: Vector3<f64>,
    pub d11: Vector3<f64>,
    pub d12: Vector3<f64>,
    pub d22: Vector3<f64>,
}

/// A parametrization of a surface with analytic derivatives.
pub trait Chart: Send + Sync + std::fmt::Debug {
    fn name(&self) -> &'static str;
    fn point(&self, s: [f64; 2]) -> Vector3<f64>;
    fn jet(&self, s: [f64; 2]) -> ChartJet;
    fn singular_set(&self) -> SingularSet;
    /// declared `(c₋, c₊)` with `c₋ I ≤ g ≤ c₊ I`
    fn ellipticity(&self) -> (f64, f64);
    /// analytic bi-Lipschitz constant when one is known
    fn bilipschitz_bound(&self) -> Option<f64> {
        None
    }
}

/// A chart together with the exclusion radius around its singular set.
#[derive(Debug)]
pub struct SurfaceGeometry {
    pub chart: Box<dyn Chart>,
    pub exclusion: f64,
}

/// Pointwise curvature data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Curvatures {
    /// ascending principal curvatures
    pub k1: f64,
    pub k2: f64,
    /// `det` of the Weingarten map
    pub gauss: f64,
    /// half the trace of the Weingarten map
    pub mean: f64,
}

impl SurfaceGeometry {
    pub fn new(chart: Box<dyn Chart>) -> Self {
        Self { chart, exclusion: 1e-8 }
    }

    pub fn with_exclusion(mut self, radius: f64) -> Self {
        self.exclusion = radius;
        self
    }

    pub fn is_singular(&self, s: [f64; 2]) -> bool {
        self.chart.singular_set().distance(s) < self.exclusion
    }

    fn check(&self, s: [f64; 2]) -> Result<ChartJet, GeometryError> {
        if self.is_singular(s) {
            return Err(GeometryError::SingularPoint(s[0], s[1]));
        }
        Ok(self.chart.jet(s))
    }

    pub fn point(&self, s: [f64; 2]) -> Vector3<f64> {
        self.chart.point(s)
    }

    pub fn metric(&self, s: [f64; 2]) -> Result<Matrix2<f64>, GeometryError> {
        Ok(first_form(&self.check(s)?))
    }

    pub fn normal(&self, s: [f64; 2]) -> Result<Vector3<f64>, GeometryError> {
        let j = self.check(s)?;
        Ok(j.d1.cross(&j.d2).normalize())
    }

    pub fn second_form(&self, s: [f64; 2]) -> Result<Matrix2<f64>, GeometryError> {
        Ok(second_form(&self.check(s)?))
    }

    /// Mixed tensor `h_μ^σ = (g⁻¹ II)`.
    pub fn weingarten(&self, s: [f64; 2]) -> Result<Matrix2<f64>, GeometryError> {
        let j = self.check(s)?;
        Ok(weingarten(&first_form(&j), &second_form(&j)))
    }

    pub fn curvatures(&self, s: [f64; 2]) -> Result<Curvatures, GeometryError> {
        let j = self.check(s)?;
        Ok(curvatures_from_forms(&first_form(&j), &second_form(&j)))
    }

    /// `ξ(s, u) = (1 - u k₁)(1 - u k₂)`.
    pub fn layer_jacobian(&self, s: [f64; 2], u: f64) -> Result<f64, GeometryError> {
        let c = self.curvatures(s)?;
        Ok((1.0 - u * c.k1) * (1.0 - u * c.k2))
    }
}

pub fn layer_jacobian(surf: &SurfaceGeometry, s: [f64; 2], u: f64) -> Result<f64, GeometryError> {
    surf.layer_jacobian(s, u)
}

pub(crate) fn first_form(j: &ChartJet) -> Matrix2<f64> {
    let (a, b) = (&j.d1, &j.d2);
    let g12 = a.dot(b);
    Matrix2::new(a.dot(a), g12, g12, b.dot(b))
}

pub(crate) fn second_form(j: &ChartJet) -> Matrix2<f64> {
    let n = j.d1.cross(&j.d2).normalize();
    let l12 = j.d12.dot(&n);
    Matrix2::new(j.d11.dot(&n), l12, l12, j.d22.dot(&n))
}

pub(crate) fn weingarten(g: &Matrix2<f64>, ii: &Matrix2<f64>) -> Matrix2<f64> {
    g.try_inverse().expect("degenerate metric") * ii
}

/// Principal curvatures from the symmetric problem `g^{-1/2} II g^{-1/2}`;
/// `K`, `M` from det/trace of the (non-symmetric) Weingarten map.
pub(crate) fn curvatures_from_forms(g: &Matrix2<f64>, ii: &Matrix2<f64>) -> Curvatures {
    let ge = SymmetricEigen::new(*g);
    let inv_sqrt = ge.eigenvectors
        * Matrix2::from_diagonal(&ge.eigenvalues.map(|l| 1.0 / l.sqrt()))
        * ge.eigenvectors.transpose();
    let sym = inv_sqrt * ii * inv_sqrt;
    let sym = 0.5 * (sym + sym.transpose());
    let e = SymmetricEigen::new(sym);
    let (mut k1, mut k2) = (e.eigenvalues[0], e.eigenvalues[1]);
    if k1 > k2 {
        std::mem::swap(&mut k1, &mut k2);
    }
    let w = weingarten(g, ii);
    Curvatures { k1, k2, gauss: w.determinant(), mean: 0.5 * w.trace() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn xi_identity_and_u_zero() {
        let s = cone_surface(&ConeSpec::new(PI / 4.0).unwrap());
        for &pt in &[[1.0, 0.5], [-2.0, 3.0], [0.1, -0.2]] {
            assert_eq!(s.layer_jacobian(pt, 0.0).unwrap(), 1.0);
            let c = s.curvatures(pt).unwrap();
            for &u in &[-3.0, -0.5, 0.2, 1.1] {
                let xi = s.layer_jacobian(pt, u).unwrap();
                let alt = 1.0 - 2.0 * c.mean * u + c.gauss * u * u;
                assert!((xi - alt).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_tip() {
        let s = cone_surface(&ConeSpec::new(0.5).unwrap());
        assert!(matches!(s.layer_jacobian([0.0, 0.0], 0.1), Err(GeometryError::SingularPoint(..))));
    }

    #[test]
    fn segment_distance() {
        let d = point_segment_distance([0.5, 1.0], [0.0, 0.0], [1.0, 0.0]);
        assert!((d - 1.0).abs() < 1e-15);
        let d = point_segment_distance([2.0, 0.0], [0.0, 0.0], [1.0, 0.0]);
        assert!((d - 1.0).abs() < 1e-15);
    }
}

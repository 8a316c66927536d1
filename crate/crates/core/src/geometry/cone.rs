use super::{Chart, ChartJet, GeometryError, SingularSet, SurfaceGeometry};
use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

/// Circular cone `z = cot θ √(x² + y²)`, opening angle `2θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub theta: f64,
}

impl ConeSpec {
    pub fn new(theta: f64) -> Result<Self, GeometryError> {
        if theta > 0.0 && theta < std::f64::consts::FRAC_PI_2 {
            Ok(Self { theta })
        } else {
            Err(GeometryError::InvalidAngle(theta))
        }
    }
}

/// Developed chart `Σ(s) = (sin θ s₁, sin θ s₂, cos θ |s|)`: `|s|` is the
/// geodesic distance from the tip along a generator.
#[derive(Debug, Clone, Copy)]
pub struct ConeChart {
    pub theta: f64,
}

impl Chart for ConeChart {
    fn name(&self) -> &'static str {
        "cone"
    }

    fn point(&self, s: [f64; 2]) -> Vector3<f64> {
        let (st, ct) = self.theta.sin_cos();
        let rho = s[0].hypot(s[1]);
        Vector3::new(st * s[0], st * s[1], ct * rho)
    }

    fn jet(&self, s: [f64; 2]) -> ChartJet {
        let (st, ct) = self.theta.sin_cos();
        let rho = s[0].hypot(s[1]);
        let (c, sn) = (s[0] / rho, s[1] / rho);
        ChartJet {
            point: self.point(s),
            d1: Vector3::new(st, 0.0, ct * c),
            d2: Vector3::new(0.0, st, ct * sn),
            d11: Vector3::new(0.0, 0.0, ct * sn * sn / rho),
            d12: Vector3::new(0.0, 0.0, -ct * c * sn / rho),
            d22: Vector3::new(0.0, 0.0, ct * c * c / rho),
        }
    }

    fn singular_set(&self) -> SingularSet {
        SingularSet::Points(vec![[0.0, 0.0]])
    }

    fn ellipticity(&self) -> (f64, f64) {
        (self.theta.sin().powi(2), 1.0)
    }

    // |ΔΣ|² = sin²θ |Δs|² + cos²θ (Δ|s|)²
    fn bilipschitz_bound(&self) -> Option<f64> {
        Some(self.theta.sin())
    }
}

pub fn cone_surface(spec: &ConeSpec) -> SurfaceGeometry {
    SurfaceGeometry::new(Box::new(ConeChart { theta: spec.theta }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn curvatures_match_closed_form() {
        let th = PI / 4.0;
        let s = cone_surface(&ConeSpec::new(th).unwrap());
        for &(x, y) in &[(1.0, 0.0), (0.3, -2.0), (-4.0, 1.5)] {
            let rho = f64::hypot(x, y);
            let c = s.curvatures([x, y]).unwrap();
            assert!(c.k1.abs() < 1e-14);
            assert!((c.k2 - 1.0 / (th.tan() * rho)).abs() < 1e-13);
            assert!(c.gauss.abs() < 1e-14);
            let n = s.normal([x, y]).unwrap();
            assert!(n[2] > 0.0);
        }
        let a = s.curvatures([1.0, 1.0]).unwrap().mean;
        let b = s.curvatures([2.0, 2.0]).unwrap().mean;
        assert!((a / b - 2.0).abs() < 1e-12);
    }

    #[test]
    fn xi_half_at_quarter_radius() {
        let s = cone_surface(&ConeSpec::new(PI / 4.0).unwrap());
        let k2 = s.curvatures([3.0, 0.0]).unwrap().k2;
        let rho0 = 1.0 / k2;
        assert!((s.layer_jacobian([3.0, 0.0], rho0 / 2.0).unwrap() - 0.5).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_angle() {
        assert!(ConeSpec::new(0.0).is_err());
        assert!(ConeSpec::new(PI / 2.0).is_err());
    }
}

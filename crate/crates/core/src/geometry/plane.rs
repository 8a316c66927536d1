use super::{Chart, ChartJet, SingularSet, SurfaceGeometry};
use nalgebra::Vector3;

/// The flat plane `z = 0`; isometric chart.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlaneChart;

impl Chart for PlaneChart {
    fn name(&self) -> &'static str {
        "plane"
    }

    fn point(&self, s: [f64; 2]) -> Vector3<f64> {
        Vector3::new(s[0], s[1], 0.0)
    }

    fn jet(&self, s: [f64; 2]) -> ChartJet {
        ChartJet {
            point: self.point(s),
            d1: Vector3::x(),
            d2: Vector3::y(),
            d11: Vector3::zeros(),
            d12: Vector3::zeros(),
            d22: Vector3::zeros(),
        }
    }

    fn singular_set(&self) -> SingularSet {
        SingularSet::None
    }

    fn ellipticity(&self) -> (f64, f64) {
        (1.0, 1.0)
    }

    fn bilipschitz_bound(&self) -> Option<f64> {
        Some(1.0)
    }
}

impl PlaneChart {
    pub fn surface() -> SurfaceGeometry {
        SurfaceGeometry::new(Box::new(PlaneChart))
    }
}

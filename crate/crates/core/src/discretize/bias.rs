use crate::transverse::BiasSide;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// The region on the "interior" side of Σ in the computational plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BiasRegion {
    /// `{p : n·p > offset}`
    HalfPlane { normal: [f64; 2], offset: f64 },
    /// open wedge around `axis` (unit) with the given half-angle
    Sector { apex: [f64; 2], axis: [f64; 2], half_angle: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Outside,
    Boundary,
    Apex,
}

impl BiasRegion {
    /// Cone interior `z > r cot θ` in the `(r, z)` half plane.
    pub fn cone_interior(theta: f64) -> Self {
        BiasRegion::Sector { apex: [0.0, 0.0], axis: [0.0, 1.0], half_angle: theta }
    }

    pub fn locate(&self, p: [f64; 2], tol: f64) -> Location {
        match *self {
            BiasRegion::HalfPlane { normal, offset } => {
                let nn = normal[0].hypot(normal[1]);
                let s = (normal[0] * p[0] + normal[1] * p[1] - offset) / nn;
                if s.abs() <= tol {
                    Location::Boundary
                } else if s > 0.0 {
                    Location::Inside
                } else {
                    Location::Outside
                }
            }
            BiasRegion::Sector { apex, axis, half_angle } => {
                let v = [p[0] - apex[0], p[1] - apex[1]];
                let r = v[0].hypot(v[1]);
                if r <= tol {
                    return Location::Apex;
                }
                let (s, c) = half_angle.sin_cos();
                let rays = [
                    [axis[0] * c - axis[1] * s, axis[0] * s + axis[1] * c],
                    [axis[0] * c + axis[1] * s, -axis[0] * s + axis[1] * c],
                ];
                let on_edge = rays.iter().any(|b| {
                    let along = b[0] * v[0] + b[1] * v[1];
                    along > 0.0 && (b[0] * v[1] - b[1] * v[0]).abs() <= tol
                });
                if on_edge {
                    return Location::Boundary;
                }
                let cos_phi = (axis[0] * v[0] + axis[1] * v[1]) / r;
                if cos_phi > c {
                    Location::Inside
                } else {
                    Location::Outside
                }
            }
        }
    }

    /// Share of a small disc around `p` that lies in the region: 1 inside,
    /// 0 outside, ½ on an edge, `half_angle/π` at a wedge apex.
    pub fn cell_fraction(&self, p: [f64; 2], tol: f64) -> f64 {
        match self.locate(p, tol) {
            Location::Inside => 1.0,
            Location::Outside => 0.0,
            Location::Boundary => 0.5,
            Location::Apex => match *self {
                BiasRegion::Sector { half_angle, .. } => half_angle / PI,
                BiasRegion::HalfPlane { .. } => 0.5,
            },
        }
    }
}

/// `V₀` inside the biased region, `0` outside and on Σ itself.
pub fn bias_indicator(point: [f64; 2], region: &BiasRegion, side: BiasSide, v0: f64) -> f64 {
    let tol = 1e-12 * point[0].abs().max(point[1].abs()).max(1.0);
    match (region.locate(point, tol), side) {
        (Location::Inside, BiasSide::Interior) | (Location::Outside, BiasSide::Exterior) => v0,
        _ => 0.0,
    }
}

/// Value of the bias used at grid nodes: the indicator off Σ and the cell
/// fraction on it, which keeps the discrete one dimensional threshold
/// second-order accurate.
pub fn bias_node_value(point: [f64; 2], region: &BiasRegion, side: BiasSide, v0: f64, tol: f64) -> f64 {
    let f = region.cell_fraction(point, tol);
    match side {
        BiasSide::Interior => v0 * f,
        BiasSide::Exterior => v0 * (1.0 - f),
    }
}

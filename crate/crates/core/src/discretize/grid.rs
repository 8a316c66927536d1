use super::DiscretizeError;
use serde::{Deserialize, Serialize};

/// Uniform tensor grid of nodes `(x0 + i hx, y0 + j hy)`, `0 ≤ i < nx`,
/// `0 ≤ j < ny`. Nodes are numbered `i * ny + j`. Everything outside the
/// node set is a homogeneous Dirichlet boundary.
///
/// For the partial-wave problems the first axis is `r` and is staggered,
/// `r_i = (i + ½) hr`, so no node sits on the axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    pub x0: f64,
    pub hx: f64,
    pub nx: usize,
    pub y0: f64,
    pub hy: f64,
    pub ny: usize,
    pub staggered: bool,
}

impl Grid2D {
    pub fn new(x0: f64, hx: f64, nx: usize, y0: f64, hy: f64, ny: usize) -> Result<Self, DiscretizeError> {
        if !(hx > 0.0 && hy > 0.0 && nx > 0 && ny > 0 && x0.is_finite() && y0.is_finite()) {
            return Err(DiscretizeError::InvalidGrid(format!(
                "hx = {hx}, hy = {hy}, nx = {nx}, ny = {ny}"
            )));
        }
        Ok(Self { x0, hx, nx, y0, hy, ny, staggered: false })
    }

    /// Half plane `r > 0`, `|z| < z_extent`: `hr = r_extent / nr`,
    /// `hz = 2 z_extent / nz`, nodes at cell centres.
    pub fn staggered_half_plane(r_extent: f64, z_extent: f64, nr: usize, nz: usize) -> Result<Self, DiscretizeError> {
        let hr = r_extent / nr as f64;
        let hz = 2.0 * z_extent / nz as f64;
        let mut g = Self::new(0.5 * hr, hr, nr, -z_extent + 0.5 * hz, hz, nz)?;
        g.staggered = true;
        Ok(g)
    }

    /// Box `(-X, X) × (-Y, Y)` with `nx`, `ny` intervals; the interior nodes
    /// `-X + i hx`, `i = 1..nx-1`, are unknowns.
    pub fn planar(x_extent: f64, y_extent: f64, nx: usize, ny: usize) -> Result<Self, DiscretizeError> {
        if nx < 2 || ny < 2 {
            return Err(DiscretizeError::InvalidGrid("planar grid needs at least two intervals".into()));
        }
        let hx = 2.0 * x_extent / nx as f64;
        let hy = 2.0 * y_extent / ny as f64;
        Self::new(-x_extent + hx, hx, nx - 1, -y_extent + hy, hy, ny - 1)
    }

    /// Staggered half-plane grid aligned with the generator `z = r cot θ`
    /// (`hz = hr cot θ`), covering the ray up to arclength `ray_length`
    /// plus a margin `width` on every side.
    pub fn cone_aligned(theta: f64, hr: f64, ray_length: f64, width: f64) -> Result<Self, DiscretizeError> {
        let hz = hr / theta.tan();
        let nr = ((ray_length * theta.sin() + width) / hr).ceil() as usize;
        let below = (width / hz).ceil() as i64;
        let above = ((ray_length * theta.cos() + width) / hz).ceil() as i64;
        let mut g = Self::new(0.5 * hr, hr, nr, (-below as f64 + 0.5) * hz, hz, (below + above) as usize)?;
        g.staggered = true;
        Ok(g)
    }

    /// Grid aligned with the broken line `z = |y| cot θ` (`hz = hy cot θ`),
    /// the apex on a node at the origin.
    pub fn broken_line_aligned(theta: f64, hy: f64, ray_length: f64, width: f64) -> Result<Self, DiscretizeError> {
        let hz = hy / theta.tan();
        let half = ((ray_length * theta.sin() + width) / hy).ceil() as i64;
        let below = (width / hz).ceil() as i64;
        let above = ((ray_length * theta.cos() + width) / hz).ceil() as i64;
        Self::new(-half as f64 * hy, hy, (2 * half + 1) as usize, -below as f64 * hz, hz, (below + above + 1) as usize)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.hx
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y0 + j as f64 * self.hy
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.ny + j
    }

    pub fn coords(&self, node: usize) -> [f64; 2] {
        [self.x(node / self.ny), self.y(node % self.ny)]
    }

    pub fn cell_area(&self) -> f64 {
        self.hx * self.hy
    }

    /// Largest coordinate magnitude; scales the alignment tolerance.
    pub fn extent(&self) -> f64 {
        [self.x0, self.x(self.nx - 1), self.y0, self.y(self.ny - 1)]
            .iter()
            .fold(1.0f64, |m, v| m.max(v.abs()))
    }

    /// Radial extent `nr·hr` of a staggered grid.
    pub fn r_extent(&self) -> f64 {
        self.x(self.nx - 1) + 0.5 * self.hx
    }

    /// Half the span of the second axis.
    pub fn z_extent(&self) -> f64 {
        0.5 * self.ny as f64 * self.hy
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staggered_nodes_are_positive() {
        let g = Grid2D::staggered_half_plane(10.0, 5.0, 20, 40).unwrap();
        assert!((g.x(0) - 0.25).abs() < 1e-15);
        assert!(g.staggered);
        assert!((g.r_extent() - 10.0).abs() < 1e-12);
        assert!((g.z_extent() - 5.0).abs() < 1e-12);
        assert!((g.y(0) + 5.0 - 0.125).abs() < 1e-12);
    }

    #[test]
    fn cone_aligned_hits_generator() {
        let th = 0.6;
        let g = Grid2D::cone_aligned(th, 0.1, 10.0, 3.0).unwrap();
        for i in 0..20 {
            let z = g.x(i) / th.tan();
            let j = ((z - g.y0) / g.hy).round();
            assert!((g.y(j as usize) - z).abs() < 1e-12);
        }
    }

    #[test]
    fn planar_interior_nodes() {
        let g = Grid2D::planar(1.0, 1.0, 10, 4).unwrap();
        assert_eq!(g.nx, 9);
        assert!((g.x(0) + 0.8).abs() < 1e-15 && (g.x(8) - 0.8).abs() < 1e-15);
        assert_eq!(g.len(), 27);
    }
}

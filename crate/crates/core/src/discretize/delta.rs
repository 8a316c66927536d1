use super::{DiscretizeError, Grid2D};
use serde::{Deserialize, Serialize};

/// A δ-interaction of strength `alpha` on a polyline in the computational
/// plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaLineSpec {
    pub polyline: Vec<[f64; 2]>,
    pub alpha: f64,
}

impl DeltaLineSpec {
    pub fn new(polyline: Vec<[f64; 2]>, alpha: f64) -> Result<Self, DiscretizeError> {
        if polyline.len() < 2 {
            return Err(DiscretizeError::InvalidPolyline("need at least two vertices".into()));
        }
        if polyline.windows(2).any(|w| w[0] == w[1]) {
            return Err(DiscretizeError::InvalidPolyline("repeated consecutive vertex".into()));
        }
        Ok(Self { polyline, alpha })
    }

    /// Halfline `z = r cot θ` from the origin, of the given arclength.
    pub fn halfline(theta: f64, length: f64, alpha: f64) -> Result<Self, DiscretizeError> {
        let (s, c) = theta.sin_cos();
        Self::new(vec![[0.0, 0.0], [length * s, length * c]], alpha)
    }

    /// Two rays `z = |y| cot θ` of the given arclength meeting at the origin.
    pub fn broken_line(theta: f64, length: f64, alpha: f64) -> Result<Self, DiscretizeError> {
        let (s, c) = theta.sin_cos();
        Self::new(vec![[-length * s, length * c], [0.0, 0.0], [length * s, length * c]], alpha)
    }

    pub fn length(&self) -> f64 {
        self.polyline.windows(2).map(|w| seg_len(w[0], w[1])).sum()
    }

    /// Chart distance from `p` to the polyline.
    pub fn distance(&self, p: [f64; 2]) -> f64 {
        self.polyline
            .windows(2)
            .map(|w| crate::geometry::point_segment_distance(p, w[0], w[1]))
            .fold(f64::INFINITY, f64::min)
    }
}

fn seg_len(a: [f64; 2], b: [f64; 2]) -> f64 {
    (b[0] - a[0]).hypot(b[1] - a[1])
}

/// Quadrature weights of the trace integral `∫ |ψ|² ds` on the polyline.
///
/// Every crossing of the polyline with a grid line must be a node (within
/// `1e-12 · max(1, extent)`). A node's weight is the arclength of its
/// Voronoi cell along the curve: half the distance to each neighbouring node,
/// and the whole stretch to a free polyline end. With nodes at both ends this
/// is the trapezoid rule and the weights sum to the polyline length.
/// Crossings outside the grid are dropped.
pub fn delta_trace_weights(grid: &Grid2D, spec: &DeltaLineSpec) -> Result<Vec<(usize, f64)>, DiscretizeError> {
    let tol = 1e-12 * grid.extent();
    let mut hits: Vec<(f64, usize)> = Vec::new();
    let mut start = 0.0;
    for w in spec.polyline.windows(2) {
        let (p, q) = (w[0], w[1]);
        let len = seg_len(p, q);
        let mut push = |t: f64, node: usize| hits.push((start + t * len, node));
        crossings(grid, p, q, 0, tol, &mut push)?;
        crossings(grid, p, q, 1, tol, &mut push)?;
        start += len;
    }
    let total = start;
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    hits.dedup_by(|a, b| a.1 == b.1);
    let n = hits.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let prev = if k == 0 { 0.0 } else { 0.5 * (hits[k - 1].0 + hits[k].0) };
        let next = if k + 1 == n { total } else { 0.5 * (hits[k].0 + hits[k + 1].0) };
        out.push((hits[k].1, next - prev));
    }
    Ok(out)
}

// Crossings of segment p→q with the grid lines normal to `axis`.
fn crossings(
    grid: &Grid2D,
    p: [f64; 2],
    q: [f64; 2],
    axis: usize,
    tol: f64,
    push: &mut impl FnMut(f64, usize),
) -> Result<(), DiscretizeError> {
    let other = 1 - axis;
    let (o, h, n) = if axis == 0 { (grid.x0, grid.hx, grid.nx) } else { (grid.y0, grid.hy, grid.ny) };
    let (oo, ho, no) = if axis == 0 { (grid.y0, grid.hy, grid.ny) } else { (grid.x0, grid.hx, grid.nx) };
    let d = q[axis] - p[axis];
    let lo = p[axis].min(q[axis]);
    let hi = p[axis].max(q[axis]);
    let first = (((lo - tol - o) / h).ceil().max(0.0)) as usize;
    let last = ((hi + tol - o) / h).floor();
    if last < 0.0 {
        return Ok(());
    }
    let last = (last as usize).min(n.saturating_sub(1));
    let node = |a: usize, b: usize| if axis == 0 { grid.index(a, b) } else { grid.index(b, a) };

    if d.abs() <= tol {
        // segment runs along a grid line of this family
        let k = ((p[axis] - o) / h).round();
        if k < 0.0 || k as usize >= n {
            return Ok(());
        }
        if (o + k * h - p[axis]).abs() > tol {
            // parallel to but off the lines: seen only through the other family
            return Ok(());
        }
        let k = k as usize;
        let dd = q[other] - p[other];
        let lo2 = p[other].min(q[other]);
        let hi2 = p[other].max(q[other]);
        let f2 = ((lo2 - tol - oo) / ho).ceil().max(0.0) as usize;
        let l2 = ((hi2 + tol - oo) / ho).floor();
        if l2 < 0.0 {
            return Ok(());
        }
        for m in f2..=(l2 as usize).min(no.saturating_sub(1)) {
            let c = oo + m as f64 * ho;
            push(((c - p[other]) / dd).clamp(0.0, 1.0), node(k, m));
        }
        return Ok(());
    }
    for k in first..=last {
        if first > last {
            break;
        }
        let c = o + k as f64 * h;
        let t = ((c - p[axis]) / d).clamp(0.0, 1.0);
        let v = p[other] + t * (q[other] - p[other]);
        let m = ((v - oo) / ho).round();
        let inside = v >= oo - tol && v <= oo + (no - 1) as f64 * ho + tol;
        if !inside {
            continue;
        }
        if (oo + m * ho - v).abs() > tol {
            return Err(DiscretizeError::MisalignedDelta { x: if axis == 0 { c } else { v }, y: if axis == 0 { v } else { c } });
        }
        push(t, node(k, m as usize));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_on_segment() {
        let g = Grid2D::new(0.0, 0.1, 11, -0.5, 0.1, 11).unwrap();
        let spec = DeltaLineSpec::new(vec![[0.0, 0.0], [1.0, 0.0]], 1.0).unwrap();
        let w = delta_trace_weights(&g, &spec).unwrap();
        assert_eq!(w.len(), 11);
        let total: f64 = w.iter().map(|p| p.1).sum();
        assert!((total - 1.0).abs() < 1e-14);
        assert!((w[0].1 - 0.05).abs() < 1e-14 && (w[5].1 - 0.1).abs() < 1e-14);
    }

    #[test]
    fn diagonal_weights() {
        let h = 0.1;
        let g = Grid2D::new(0.0, h, 21, 0.0, h, 21).unwrap();
        let spec = DeltaLineSpec::new(vec![[0.0, 0.0], [2.0, 2.0]], 1.0).unwrap();
        let w = delta_trace_weights(&g, &spec).unwrap();
        assert_eq!(w.len(), 21);
        assert!((w[3].1 - h * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn corner_weight_is_half_sum() {
        let th = std::f64::consts::FRAC_PI_4;
        let g = Grid2D::broken_line_aligned(th, 0.1, 2.0, 0.5).unwrap();
        let spec = DeltaLineSpec::broken_line(th, 2.0, 1.0).unwrap();
        let w = delta_trace_weights(&g, &spec).unwrap();
        let apex = g.index(((0.0 - g.x0) / g.hx).round() as usize, ((0.0 - g.y0) / g.hy).round() as usize);
        let wa = w.iter().find(|p| p.0 == apex).unwrap().1;
        let step = 0.1f64.hypot(0.1);
        assert!((wa - step).abs() < 1e-12);
        let total: f64 = w.iter().map(|p| p.1).sum();
        assert!((total - spec.length()).abs() < 1e-9);
    }

    #[test]
    fn misaligned_rejected() {
        let g = Grid2D::new(0.0, 0.1, 21, 0.0, 0.1, 21).unwrap();
        let spec = DeltaLineSpec::new(vec![[0.0, 0.0], [1.0, 0.37]], 1.0).unwrap();
        assert!(matches!(delta_trace_weights(&g, &spec), Err(DiscretizeError::MisalignedDelta { .. })));
    }

    #[test]
    fn staggered_halfline_from_tip() {
        let th = 0.5;
        let hr = 0.1;
        let g = Grid2D::cone_aligned(th, hr, 3.0, 1.0).unwrap();
        let r_end = g.x(15);
        let spec = DeltaLineSpec::new(vec![[0.0, 0.0], [r_end, r_end / th.tan()]], 1.0).unwrap();
        let w = delta_trace_weights(&g, &spec).unwrap();
        assert_eq!(w.len(), 16);
        assert!((w[0].1 - hr / th.sin()).abs() < 1e-12);
        assert!((w[10].1 - hr / th.sin()).abs() < 1e-12);
    }
}

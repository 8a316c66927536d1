use super::TransverseError;
use serde::{Deserialize, Serialize};

/// Bounded zero-energy solution at `V₀ = α²`: `1` for `x ≤ 0`, `e^{-αx}` for
/// `x > 0`.
pub fn critical_zero_mode(alpha: f64, x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else {
        (-alpha * x).exp()
    }
}

/// Max-norm residuals of `h ψ` for the critical zero mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroModeResidual {
    pub max: f64,
    /// over nodes with `x < 0` only
    pub left: f64,
    /// over nodes with `x > 0` only
    pub right: f64,
    pub nodes_used: usize,
}

/// Applies the three-point (nonuniform) second difference plus `V = α²` on
/// `x > 0` to the zero mode and reports the residual away from the point
/// interaction. A node is skipped when its stencil reaches across `x = 0`.
pub fn critical_zero_mode_residual(
    alpha: f64,
    grid: &[f64],
) -> Result<ZeroModeResidual, TransverseError> {
    if grid.len() < 3 {
        return Err(TransverseError::InvalidGrid("need at least three nodes".into()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(TransverseError::InvalidGrid("nodes must be strictly increasing".into()));
    }
    if !(grid[0] < 0.0 && *grid.last().unwrap() > 0.0) {
        return Err(TransverseError::InvalidGrid("grid does not straddle x = 0".into()));
    }
    let v0 = alpha * alpha;
    let psi: Vec<f64> = grid.iter().map(|&x| critical_zero_mode(alpha, x)).collect();
    let mut out = ZeroModeResidual { max: 0.0, left: 0.0, right: 0.0, nodes_used: 0 };
    for i in 1..grid.len() - 1 {
        let (xm, x, xp) = (grid[i - 1], grid[i], grid[i + 1]);
        if xm < 0.0 && xp > 0.0 {
            continue;
        }
        let hm = x - xm;
        let hp = xp - x;
        let d2 = 2.0 * ((psi[i + 1] - psi[i]) / hp - (psi[i] - psi[i - 1]) / hm) / (hp + hm);
        let v = if x > 0.0 { v0 } else { 0.0 };
        let r = (-d2 + v * psi[i]).abs();
        out.max = out.max.max(r);
        if x < 0.0 {
            out.left = out.left.max(r);
        } else {
            out.right = out.right.max(r);
        }
        out.nodes_used += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(a: f64, b: f64, h: f64) -> Vec<f64> {
        let n = ((b - a) / h).round() as usize;
        (0..=n).map(|i| a + i as f64 * h).collect()
    }

    #[test]
    fn second_order_and_flat_side_exact() {
        let r1 = critical_zero_mode_residual(1.0, &uniform(-5.0, 5.0, 1e-2)).unwrap();
        assert_eq!(r1.left, 0.0);
        // |ψ''''|/12 h² with ψ'''' ≤ α⁴
        assert!(r1.max <= 1.0 / 12.0 * 1e-4 * 1.01, "{}", r1.max);
        let a = critical_zero_mode_residual(2.0, &uniform(-5.0, 5.0, 2e-3)).unwrap();
        let b = critical_zero_mode_residual(2.0, &uniform(-5.0, 5.0, 1e-3)).unwrap();
        let ratio = b.max / a.max;
        assert!((ratio - 0.25).abs() < 0.01, "{ratio}");
    }

    #[test]
    fn grid_checks() {
        assert!(critical_zero_mode_residual(1.0, &[0.1, 0.2, 0.3]).is_err());
        assert!(critical_zero_mode_residual(1.0, &[-0.1, 0.2, 0.1]).is_err());
        assert!(critical_zero_mode_residual(1.0, &[-0.1, 0.1]).is_err());
    }

    #[test]
    fn jump_condition() {
        let alpha = 1.7;
        let h = 1e-7;
        let dl = (critical_zero_mode(alpha, 0.0) - critical_zero_mode(alpha, -h)) / h;
        let dr = (critical_zero_mode(alpha, h) - critical_zero_mode(alpha, 0.0)) / h;
        assert!((dr - dl + alpha * critical_zero_mode(alpha, 0.0)).abs() < 1e-6);
    }
}

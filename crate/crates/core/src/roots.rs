//! Bracketed scalar root finding.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("no sign change on [{a}, {b}] (f(a) = {fa}, f(b) = {fb})")]
    NoSignChange { a: f64, b: f64, fa: f64, fb: f64 },
    #[error("non-finite function value {fx} at {x}")]
    NotFinite { x: f64, fx: f64 },
}

/// Stopping rule for [`bisect_secant`].
#[derive(Debug, Clone, Copy)]
pub struct RootTol {
    pub abs: f64,
    pub rel: f64,
    pub max_iter: usize,
}

impl Default for RootTol {
    fn default() -> Self {
        Self { abs: 1e-14, rel: 4.0 * f64::EPSILON, max_iter: 500 }
    }
}

/// Root of a continuous `f` on a sign-changing bracket `[a, b]`.
///
/// Every step first tries a secant step through the bracket ends and falls
/// back to bisection whenever the secant point leaves the middle part of the
/// bracket or fails to shrink it fast enough. When both ends are positive
/// and far apart the bisection point is the geometric mean, so roots that
/// sit many decades below `b` are reached in logarithmically many steps.
pub fn bisect_secant<F>(mut f: F, a: f64, b: f64, tol: RootTol) -> Result<f64, RootError>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut flo = f(lo);
    let mut fhi = f(hi);
    for (x, fx) in [(lo, flo), (hi, fhi)] {
        if !fx.is_finite() {
            return Err(RootError::NotFinite { x, fx });
        }
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(RootError::NoSignChange { a: lo, b: hi, fa: flo, fb: fhi });
    }
    let mut last_width = hi - lo;
    for _ in 0..tol.max_iter {
        let width = hi - lo;
        let scale = lo.abs().max(hi.abs());
        if width <= tol.abs.max(tol.rel * scale) {
            break;
        }
        let mid = if lo > 0.0 && hi > 8.0 * lo {
            (lo * hi).sqrt()
        } else {
            lo + 0.5 * width
        };
        let secant = hi - fhi * (hi - lo) / (fhi - flo);
        let guard = 0.05 * width;
        let x = if secant.is_finite()
            && secant > lo + guard
            && secant < hi - guard
            && width < 0.5 * last_width
        {
            secant
        } else {
            mid
        };
        last_width = width;
        let fx = f(x);
        if !fx.is_finite() {
            return Err(RootError::NotFinite { x, fx });
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    Ok(if flo.abs() < fhi.abs() { lo } else { hi })
}

/// Plain interval halving; kept as an independent oracle for tests.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, width: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    let flo = f(lo);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid).signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = bisect_secant(|x| x * x - 2.0, 0.0, 2.0, RootTol::default()).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn tiny_root_keeps_relative_accuracy() {
        let r = bisect_secant(|x| x - 3e-19, 1e-300, 1.0, RootTol { abs: 0.0, ..Default::default() })
            .unwrap();
        assert!((r / 3e-19 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn no_sign_change() {
        assert!(matches!(
            bisect_secant(|x| x * x + 1.0, -1.0, 1.0, RootTol::default()),
            Err(RootError::NoSignChange { .. })
        ));
    }
}

use super::TransverseError;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HardyOptions {
    /// largest admissible share of the estimated tail in the total integral
    pub max_tail_fraction: f64,
    /// relative floor added to the error bound (round-off)
    pub rel_floor: f64,
}

impl Default for HardyOptions {
    fn default() -> Self {
        Self { max_tail_fraction: 1e-6, rel_floor: 1e-12 }
    }
}

/// `∫₀^∞ (|φ'|² + V₀|φ|²) - √V₀ |φ(0)|²` with its quadrature error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HardyMargin {
    pub margin: f64,
    pub eps_quad: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub tail: f64,
}

impl HardyMargin {
    pub fn holds(&self) -> bool {
        self.margin >= -self.eps_quad
    }
}

/// Margin for samples `phi[i] = φ(i h)`, `i = 0..n`.
///
/// `φ'` comes from fourth-order differences, the integral from composite
/// Simpson, and the part beyond the last sample from an exponential fit of
/// the last node. The error bound is the change against the same estimate on
/// every second sample plus the tail itself.
pub fn hardy_margin(phi: &[f64], h: f64, v0: f64) -> Result<HardyMargin, TransverseError> {
    hardy_margin_with(phi, h, v0, &HardyOptions::default())
}

pub fn hardy_margin_with(
    phi: &[f64],
    h: f64,
    v0: f64,
    opts: &HardyOptions,
) -> Result<HardyMargin, TransverseError> {
    if !(v0 > 0.0) {
        return Err(TransverseError::NonPositiveBias(v0));
    }
    if phi.len() < 11 || !(h > 0.0) {
        return Err(TransverseError::InvalidGrid("need at least 11 samples and h > 0".into()));
    }
    let fine = integrate(phi, h, v0);
    let coarse_samples: Vec<f64> = phi.iter().step_by(2).copied().collect();
    let coarse = integrate(&coarse_samples, 2.0 * h, v0);

    let (tail, fraction) = tail_estimate(phi, h, v0, fine)?;
    if fraction > opts.max_tail_fraction {
        return Err(TransverseError::InsufficientDecay {
            fraction,
            limit: opts.max_tail_fraction,
        });
    }
    let rhs = v0.sqrt() * phi[0] * phi[0];
    let lhs = fine + tail;
    let margin = lhs - rhs;
    let coarse_margin = coarse + tail - rhs;
    let eps_quad = (margin - coarse_margin).abs() + tail.abs() + opts.rel_floor * (lhs.abs() + rhs);
    Ok(HardyMargin { margin, eps_quad, lhs, rhs, tail })
}

fn tail_estimate(phi: &[f64], h: f64, v0: f64, body: f64) -> Result<(f64, f64), TransverseError> {
    let d = derivative(phi, h);
    let n = phi.len() - 1;
    let (f, fp) = (phi[n], d[n]);
    if f == 0.0 {
        return Ok((0.0, 0.0));
    }
    let k = -fp / f;
    if !(k > 0.0) {
        return Err(TransverseError::InsufficientDecay { fraction: 1.0, limit: 0.0 });
    }
    let tail = (k * k + v0) * f * f / (2.0 * k);
    let total = body + tail;
    Ok((tail, if total > 0.0 { tail / total } else { 1.0 }))
}

fn integrate(phi: &[f64], h: f64, v0: f64) -> f64 {
    let d = derivative(phi, h);
    let g: Vec<f64> = phi.iter().zip(&d).map(|(f, fp)| fp * fp + v0 * f * f).collect();
    simpson(&g, h)
}

/// Fourth-order first derivative on a uniform grid (one-sided at the ends).
pub(crate) fn derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut d = vec![0.0; n];
    let c = 1.0 / (12.0 * h);
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * c;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * c;
    for i in 2..n - 2 {
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * c;
    }
    let m = n - 1;
    d[m] = (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]) * c;
    d[m - 1] = (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]) * c;
    d
}

/// Composite Simpson; an odd number of intervals ends with the 3/8 rule.
pub(crate) fn simpson(g: &[f64], h: f64) -> f64 {
    let intervals = g.len() - 1;
    let (even_part, rest) = if intervals % 2 == 0 { (intervals, 0) } else { (intervals - 3, 3) };
    let mut s = 0.0;
    let mut i = 0;
    while i < even_part {
        s += g[i] + 4.0 * g[i + 1] + g[i + 2];
        i += 2;
    }
    s *= h / 3.0;
    if rest == 3 {
        let j = even_part;
        s += 3.0 * h / 8.0 * (g[j] + 3.0 * g[j + 1] + 3.0 * g[j + 2] + g[j + 3]);
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TrialTerm {
    Exp { amp: f64, rate: f64 },
    Gauss { amp: f64, center: f64, width: f64 },
}

/// Smooth decaying trial function on the half line: a sum of exponentials
/// and Gaussians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardyTrial {
    pub terms: Vec<TrialTerm>,
}

impl HardyTrial {
    pub fn exponential(rate: f64) -> Self {
        Self { terms: vec![TrialTerm::Exp { amp: 1.0, rate }] }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut terms = Vec::new();
        for _ in 0..rng.random_range(1..=3) {
            terms.push(TrialTerm::Exp {
                amp: rng.random_range(-1.0..1.0),
                rate: rng.random_range(0.5..4.0),
            });
        }
        for _ in 0..rng.random_range(0..=2) {
            terms.push(TrialTerm::Gauss {
                amp: rng.random_range(-1.0..1.0),
                center: rng.random_range(0.0..4.0),
                width: rng.random_range(0.3..2.0),
            });
        }
        Self { terms }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| match *t {
                TrialTerm::Exp { amp, rate } => amp * (-rate * x).exp(),
                TrialTerm::Gauss { amp, center, width } => {
                    let u = (x - center) / width;
                    amp * (-u * u).exp()
                }
            })
            .sum()
    }

    /// Samples at `i h` for `i = 0..=round(extent/h)`.
    pub fn sample(&self, extent: f64, h: f64) -> Vec<f64> {
        let n = (extent / h).round() as usize;
        (0..=n).map(|i| self.eval(i as f64 * h)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn simpson_exact_for_cubics() {
        for n in [11usize, 12] {
            let h = 0.1;
            let g: Vec<f64> = (0..n).map(|i| (i as f64 * h).powi(3)).collect();
            let exact = ((n - 1) as f64 * h).powi(4) / 4.0;
            assert!((simpson(&g, h) - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_exact_for_quartics() {
        let h = 0.1;
        let f: Vec<f64> = (0..10).map(|i| (i as f64 * h).powi(4)).collect();
        let d = derivative(&f, h);
        for (i, v) in d.iter().enumerate() {
            let x = i as f64 * h;
            assert!((v - 4.0 * x.powi(3)).abs() < 1e-10);
        }
    }

    #[test]
    fn closed_forms() {
        let m = hardy_margin(&HardyTrial::exponential(1.0).sample(60.0, 0.01), 0.01, 1.0).unwrap();
        assert!(m.margin.abs() <= m.eps_quad && m.eps_quad < 1e-6);
        let m = hardy_margin(&HardyTrial::exponential(2.0).sample(60.0, 0.01), 0.01, 1.0).unwrap();
        assert!((m.margin - 0.25).abs() <= m.eps_quad);
        let z = hardy_margin(&vec![0.0; 101], 0.01, 1.0).unwrap();
        assert_eq!(z.margin, 0.0);
    }

    #[test]
    fn non_decaying_rejected() {
        let phi: Vec<f64> = (0..101).map(|i| 1.0 + i as f64 * 0.01).collect();
        assert!(matches!(hardy_margin(&phi, 0.01, 1.0), Err(TransverseError::InsufficientDecay { .. })));
        let slow = HardyTrial::exponential(0.05).sample(20.0, 0.01);
        assert!(matches!(hardy_margin(&slow, 0.01, 1.0), Err(TransverseError::InsufficientDecay { .. })));
    }

    #[test]
    fn random_family_is_deterministic() {
        let a = HardyTrial::random(&mut ChaCha8Rng::seed_from_u64(3));
        let b = HardyTrial::random(&mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }
}

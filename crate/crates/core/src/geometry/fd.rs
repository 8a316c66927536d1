use super::{curvatures_from_forms, Chart, ChartJet, Curvatures};

/// Curvatures from central differences of `Σ` alone (step `h`), ignoring the
/// chart's analytic derivatives.
pub fn fd_principal_curvatures(chart: &dyn Chart, s: [f64; 2], h: f64) -> Curvatures {
    let p = |a: f64, b: f64| chart.point([s[0] + a, s[1] + b]);
    let c = p(0.0, 0.0);
    let jet = ChartJet {
        point: c,
        d1: (p(h, 0.0) - p(-h, 0.0)) / (2.0 * h),
        d2: (p(0.0, h) - p(0.0, -h)) / (2.0 * h),
        d11: (p(h, 0.0) - 2.0 * c + p(-h, 0.0)) / (h * h),
        d22: (p(0.0, h) - 2.0 * c + p(0.0, -h)) / (h * h),
        d12: (p(h, h) - p(h, -h) - p(-h, h) + p(-h, -h)) / (4.0 * h * h),
    };
    curvatures_from_forms(&super::first_form(&jet), &super::second_form(&jet))
}

/// Observed convergence order of the difference oracle at `s`:
/// `log₂(e(h)/e(h/2))` with `e` the max error in `(k₁, k₂)` against the
/// analytic values.
pub fn fd_order(chart: &dyn Chart, s: [f64; 2], h: f64) -> f64 {
    let j = chart.jet(s);
    let exact = curvatures_from_forms(&super::first_form(&j), &super::second_form(&j));
    let err = |h: f64| {
        let c = fd_principal_curvatures(chart, s, h);
        (c.k1 - exact.k1).abs().max((c.k2 - exact.k2).abs())
    };
    (err(h) / err(0.5 * h)).log2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ConeChart, RooftopChart, RooftopSpec};

    #[test]
    fn cone_order_two() {
        let ch = ConeChart { theta: 0.6 };
        let o = fd_order(&ch, [1.3, -0.7], 0.02);
        assert!(o > 1.8, "{o}");
    }

    #[test]
    fn rooftop_cap_order_two() {
        let ch = RooftopChart { spec: RooftopSpec::new(4.0, 0.5, 0.0).unwrap() };
        let o = fd_order(&ch, [3.0, 0.8], 0.02);
        assert!(o > 1.8, "{o}");
    }
}

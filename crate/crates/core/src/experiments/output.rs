//! CSV, JSON and SVG writers.

use super::{ExperimentError, ScanReport};
use plotters::prelude::*;
use std::collections::BTreeMap;
use std::path::Path;

fn out_err<E: std::fmt::Display>(e: E) -> ExperimentError {
    ExperimentError::Output(e.to_string())
}

/// Eigenvalue rows, or the transverse table, or the verdicts, whichever
/// the report carries first.
pub fn write_csv(report: &ScanReport, path: &Path) -> Result<(), ExperimentError> {
    let mut w = csv::Writer::from_path(path).map_err(out_err)?;
    if !report.rows.is_empty() {
        for r in &report.rows {
            w.serialize(r).map_err(out_err)?;
        }
    } else if !report.transverse_rows.is_empty() {
        for r in &report.transverse_rows {
            w.serialize(r).map_err(out_err)?;
        }
    } else {
        for v in &report.verdicts {
            w.serialize(v).map_err(out_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_json(report: &ScanReport, path: &Path) -> Result<(), ExperimentError> {
    let text = serde_json::to_string_pretty(report).map_err(out_err)?;
    std::fs::write(path, text)?;
    Ok(())
}

type Series = Vec<(String, Vec<(f64, f64)>)>;

fn grouped<K: Ord, F: Fn(&super::EigenRow) -> (K, String, f64)>(report: &ScanReport, key: F) -> Series {
    let mut groups: BTreeMap<K, (String, Vec<(f64, f64)>)> = BTreeMap::new();
    for r in report.rows.iter().filter(|r| r.index == 0) {
        let (k, name, x) = key(r);
        groups.entry(k).or_insert_with(|| (name, Vec::new())).1.push((x, r.eigenvalue));
    }
    groups
        .into_values()
        .map(|(n, mut pts)| {
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            (n, pts)
        })
        .collect()
}

fn bits(x: f64) -> u64 {
    x.to_bits()
}

fn report_series(report: &ScanReport) -> (String, Series) {
    let mu_line = |xs: &[f64]| -> Series {
        report
            .thresholds
            .iter()
            .map(|t| (format!("μ (V₀ = {})", t.v0), xs.iter().map(|x| (*x, t.mu)).collect()))
            .collect()
    };
    match report.axis.as_str() {
        "v0" => {
            let mut s = grouped(report, |r| {
                ((r.m, bits(r.box_size)), format!("λ₀ m = {} box {}", r.m.unwrap_or(0), r.box_size), r.v0)
            });
            s.retain(|p| p.1.len() > 1);
            s.push(("μ(V₀)".into(), report.thresholds.iter().map(|t| (t.v0, t.mu)).collect()));
            ("V₀".into(), s)
        }
        "m" => {
            let mut s = grouped(report, |r| {
                ((bits(r.v0), bits(r.box_size)), format!("λ₀ V₀ = {} box {}", r.v0, r.box_size), r.m.unwrap_or(0) as f64)
            });
            s.extend(mu_line(&report.axis_values));
            ("m".into(), s)
        }
        "d" => {
            let mut groups: BTreeMap<u64, (String, Vec<(f64, f64)>)> = BTreeMap::new();
            for r in &report.transverse_rows {
                if let Some(m) = r.mu_d {
                    groups.entry(bits(r.v0)).or_insert_with(|| (format!("μ_d V₀ = {}", r.v0), Vec::new())).1.push((r.d, m));
                }
            }
            let mut s: Series = groups.into_values().collect();
            s.extend(mu_line(&report.axis_values));
            ("d".into(), s)
        }
        "theta" => {
            let s = grouped(report, |r| {
                let t = r.theta.unwrap_or(0.0);
                ((bits(t), bits(r.v0)), format!("λ₀ θ = {t:.4} V₀ = {}", r.v0), r.box_size)
            });
            ("box".into(), s)
        }
        _ => (report.axis.clone(), Vec::new()),
    }
}

/// Line chart of the lowest eigenvalues against the report's axis with the
/// threshold overlaid. Returns `false` when there is nothing to draw.
pub fn plot_report(report: &ScanReport, path: &Path) -> Result<bool, ExperimentError> {
    let (xlabel, series) = report_series(report);
    let pts: Vec<(f64, f64)> = series.iter().flat_map(|s| s.1.iter().copied()).collect();
    if pts.is_empty() {
        return Ok(false);
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in &pts {
        x0 = x0.min(*x);
        x1 = x1.max(*x);
        y0 = y0.min(*y);
        y1 = y1.max(*y);
    }
    let pad = |a: f64, b: f64| {
        let w = (b - a).abs().max(1e-6);
        (a - 0.05 * w, b + 0.05 * w)
    };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);

    let root = SVGBackend::new(path, (900, 560)).into_drawing_area();
    root.fill(&WHITE).map_err(out_err)?;
    let mut chart = ChartBuilder::on(&root)
        .caption(&report.experiment_id, ("sans-serif", 22))
        .margin(16)
        .x_label_area_size(40)
        .y_label_area_size(70)
        .build_cartesian_2d(x0..x1, y0..y1)
        .map_err(out_err)?;
    chart.configure_mesh().x_desc(xlabel).y_desc("energy").draw().map_err(out_err)?;
    for (i, (name, p)) in series.into_iter().enumerate() {
        let color = Palette99::pick(i).to_rgba();
        chart
            .draw_series(LineSeries::new(p, color.stroke_width(2)))
            .map_err(out_err)?
            .label(name)
            .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], color));
    }
    chart.configure_series_labels().background_style(WHITE.mix(0.8)).border_style(BLACK).draw().map_err(out_err)?;
    root.present().map_err(out_err)?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::super::{EigenRow, ThresholdPoint};
    use super::*;

    fn sample() -> ScanReport {
        let mut r = ScanReport::new("cone-scan", "v0", &());
        for (i, v0) in [0.0, 0.1, 0.2].iter().enumerate() {
            r.rows.push(EigenRow {
                experiment_id: "cone-scan".into(),
                m: Some(0),
                v0: *v0,
                alpha: 1.0,
                theta: Some(0.7),
                box_size: 100.0,
                spacing: 0.1,
                index: 0,
                eigenvalue: -0.25 + 0.04 * i as f64,
                residual: 1e-10,
                classification: "unclassified".into(),
            });
            r.thresholds.push(ThresholdPoint { v0: *v0, mu: -(1.0 - v0).powi(2) / 4.0 });
        }
        r
    }

    #[test]
    fn writers_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let r = sample();
        write_json(&r, &dir.path().join("r.json")).unwrap();
        let back = ScanReport::from_json(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
        assert_eq!(back, r);
        write_csv(&r, &dir.path().join("r.csv")).unwrap();
        let text = std::fs::read_to_string(dir.path().join("r.csv")).unwrap();
        assert!(text.starts_with("experiment_id,m,v0,alpha,theta,box,spacing,index,eigenvalue,residual,classification"));
        assert_eq!(text.lines().count(), 4);
        assert!(plot_report(&r, &dir.path().join("r.svg")).unwrap());
        assert!(std::fs::read_to_string(dir.path().join("r.svg")).unwrap().contains("<svg"));
    }
}

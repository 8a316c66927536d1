//! Coarse `V₀` scan of the cone ground state against `μ(V₀)`.

use leaky_surface::experiments::{calibrate_slack, cone_bias_scan, ConeScanConfig, GridLadder};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let slack = calibrate_slack(1.0, &[0.8, 0.4, 0.2], 40.0, 12.0)?;
    let cfg = ConeScanConfig {
        v0_points: 6,
        v0_max: Some(0.5),
        ladder: GridLadder { spacing: 0.2, boxes: vec![25.0, 50.0, 100.0], tube_width: 10.0 },
        curve_box: 50.0,
        jump_tol: None,
        ..ConeScanConfig::default()
    };
    let report = cone_bias_scan(&cfg, &slack)?;
    for t in &report.thresholds {
        let low = report.rows.iter().find(|r| r.v0 == t.v0 && r.box_size == cfg.curve_box && r.index == 0);
        println!("V0 = {:.2}: mu = {:.6}, lowest = {:.6}", t.v0, t.mu, low.map_or(f64::NAN, |r| r.eigenvalue));
    }
    for v in &report.verdicts {
        println!("{:?}: {} [{}]", v.verdict, v.claim, v.inequality);
    }
    Ok(())
}

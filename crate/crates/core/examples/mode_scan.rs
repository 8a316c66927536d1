//! Partial waves m = 0, 1, 2 of the cone on a coarse ladder.

use leaky_surface::experiments::{calibrate_slack, mode_scan, GridLadder, ModeScanConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let slack = calibrate_slack(1.0, &[0.8, 0.4, 0.2], 40.0, 12.0)?;
    let cfg = ModeScanConfig {
        v0_list: vec![0.5],
        ladder: GridLadder { spacing: 0.2, boxes: vec![20.0, 40.0, 80.0], tube_width: 10.0 },
        ..ModeScanConfig::default()
    };
    let report = mode_scan(&cfg, &slack)?;
    for (k, v) in &report.summary {
        println!("{k} = {v:.6}");
    }
    for v in &report.verdicts {
        println!("{:?}: {} [{}]", v.verdict, v.claim, v.inequality);
    }
    Ok(())
}

//! Exterior bias at and above the critical coupling: the spectrum stays
//! above `-C h`.

use leaky_surface::experiments::{calibrate_slack, exterior_positivity_check, ExteriorConfig, GridLadder};
use leaky_surface::transverse::BiasSide;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let slack = calibrate_slack(1.0, &[0.8, 0.4, 0.2], 40.0, 12.0)?;
    let ladder = GridLadder { spacing: 0.2, boxes: vec![20.0, 40.0, 80.0], tube_width: 10.0 };
    for side in [BiasSide::Exterior, BiasSide::Interior] {
        let cfg = ExteriorConfig { bias_side: side, ladder: ladder.clone(), ..ExteriorConfig::default() };
        let report = exterior_positivity_check(&cfg, &slack)?;
        println!("bias {side}:");
        for v in &report.verdicts {
            println!("  {:?}: {}", v.verdict, v.inequality);
        }
    }
    Ok(())
}

//! Assumption probe of a surface given as a config snippet.

use leaky_surface::experiments::{verify_surface, SurfaceConfig};
use leaky_surface::geometry::{ProbePlan, SurfaceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["kind = \"cone\"\ntheta = 0.7\n", "kind = \"rooftop\"\ntheta = 0.5\nL = 4.0\nsmoothing_radius = 0.3\n", "kind = \"plane\"\n"] {
        let cfg = SurfaceConfig { surface: SurfaceSpec::from_toml(text)?, probe: ProbePlan { pairs: 20_000, ..ProbePlan::default() } };
        let report = verify_surface(&cfg)?;
        println!("{:?}", cfg.surface);
        for v in &report.verdicts {
            println!("  {:?}: {} [{}]", v.verdict, v.claim, v.inequality);
        }
    }
    Ok(())
}

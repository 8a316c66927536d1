//! The rooftop surface: ridge, homothetic caps and the smoothed fillet.

use leaky_surface::geometry::{rooftop_surface, verify_assumptions, ProbePlan, RooftopSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = RooftopSpec::new(4.0, 0.6, 0.25)?;
    let surf = rooftop_surface(&spec)?;
    for s in [[0.0, 1.0], [2.1, 0.3], [4.0, -2.0], [-3.0, 3.0]] {
        let c = surf.curvatures(s)?;
        println!("s = {s:?}: height {:.4}, k = ({:.5}, {:.5})", surf.point(s).z, c.k1, c.k2);
    }
    let plan = ProbePlan { pairs: 20_000, ..ProbePlan::default() };
    let report = verify_assumptions(&surf, &plan);
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

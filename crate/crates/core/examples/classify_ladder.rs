//! Discrete versus continuum tags from a box ladder, cone channels m = 0, 1.

use leaky_surface::eigensolve::{classify_spectrum, ClassifyOptions, EigenError};
use leaky_surface::experiments::cone_problem;
use leaky_surface::transverse::{essential_threshold, BiasSide, CouplingParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let theta = std::f64::consts::FRAC_PI_4;
    let params = CouplingParams::new(1.0, 0.0, BiasSide::Interior)?;
    let mu = essential_threshold(&params);
    for m in [0, 1] {
        let c = classify_spectrum(
            &[25.0, 50.0, 100.0],
            |l| cone_problem(theta, m, &params, 0.2, l, 10.0).map_err(|e| EigenError::Assembly(e.to_string())),
            mu,
            3,
            1e-9,
            &ClassifyOptions::default(),
        )?;
        println!("m = {m}:");
        for i in 0..c.values.len() {
            println!("  {:.8}  drift {:+.2e}  {}", c.values[i], c.drift[i], c.tags[i]);
        }
    }
    Ok(())
}

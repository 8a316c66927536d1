//! Broken-line eigenvalues and the longitudinal trial energy built on them.

use leaky_surface::experiments::{
    bump_gprime_norm_sq, rooftop_lambda, rooftop_trial_energy, GridLadder, RooftopTrial,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("||g'||^2 = {:.10}", bump_gprime_norm_sq());
    let ladder = GridLadder { spacing: 0.1, boxes: vec![15.0, 30.0, 60.0], tube_width: 10.0 };
    let theta = std::f64::consts::PI / 12.0;
    for v0 in [0.0, 1.0] {
        match rooftop_lambda(theta, 1.0, v0, &ladder, 4, 1e-9) {
            Ok(r) => {
                println!("V0 = {v0}: discrete {:?} below {}", r.lambdas, r.threshold);
                let t = RooftopTrial::halfway(r.lambdas[0])?;
                println!(
                    "  eps = {:.4e}, q = {:.6} (lambda/2 = {:.6}), ridge length > {:.1}",
                    t.epsilon,
                    rooftop_trial_energy(&t),
                    0.5 * r.lambdas[0],
                    t.sufficient_length()
                );
            }
            Err(e) => println!("V0 = {v0}: {e}"),
        }
    }
    Ok(())
}

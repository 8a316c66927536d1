//! Threshold `μ(V₀)`, bound state and regime of the transverse operator.

use leaky_surface::transverse::{
    bound_state_energy, critical_zero_mode_residual, essential_threshold, transverse_spectrum, BiasSide,
    CouplingParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = 1.0;
    println!("{:>6} {:>12} {:>12} {:>14}", "V0", "mu", "bound", "regime");
    for v0 in [0.0, 0.25, 0.5, 0.75, 1.0, 2.0, 4.0] {
        let p = CouplingParams::new(alpha, v0, BiasSide::Interior)?;
        let s = transverse_spectrum(&p);
        println!(
            "{v0:>6} {:>12.8} {:>12} {:>14?}  (kappa1 {:.4}, kappa2 {:.4})",
            essential_threshold(&p),
            bound_state_energy(&p).map_or("none".into(), |e| format!("{e:.8}")),
            p.regime(),
            s.kappa1,
            s.kappa2
        );
    }

    // at V0 = alpha^2 the zero-energy solution is bounded; its residual on a
    // grid shrinks like h^2
    for h in [0.1, 0.05, 0.025] {
        let n = (20.0 / h) as i64;
        let grid: Vec<f64> = (-n..=n).map(|i| i as f64 * h).collect();
        let r = critical_zero_mode_residual(alpha, &grid)?;
        println!("zero mode residual h = {h}: {:.3e}", r.max);
    }
    Ok(())
}

//! Ground energy of the transverse operator on a Neumann box `(-d, d)`.

use leaky_surface::transverse::{
    essential_threshold, neumann_box_gap, BiasSide, CouplingParams, NeumannBoxParams, C0,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for v0 in [0.0, 0.5, 4.0] {
        let p = CouplingParams::new(1.0, v0, BiasSide::Interior)?;
        let mu = essential_threshold(&p);
        println!("V0 = {v0}, mu = {mu}");
        for d in [5.0, 10.0, 20.0, 40.0] {
            match neumann_box_gap(&p, &NeumannBoxParams::new(d)?, 1e-14)? {
                Some(gap) => println!("  d = {d:>4}: mu - mu_d = {gap:.6e}   (bound {C0}/d = {:.4})", C0 / d),
                None => println!("  d = {d:>4}: no negative ground energy"),
            }
        }
    }
    Ok(())
}

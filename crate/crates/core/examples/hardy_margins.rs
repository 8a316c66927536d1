//! Hardy-type margins on random decaying trial functions; the matched
//! exponential sits on the boundary.

use leaky_surface::transverse::{hardy_margin, HardyTrial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (extent, h) = (40.0, 0.005);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for v0 in [0.25, 1.0, 4.0] {
        let mut worst = f64::INFINITY;
        for _ in 0..50 {
            let t = HardyTrial::random(&mut rng);
            let m = hardy_margin(&t.sample(extent, h), h, v0)?;
            worst = worst.min(m.margin + m.eps_quad);
        }
        let e = HardyTrial::exponential(v0.sqrt());
        let m = hardy_margin(&e.sample(extent, h), h, v0)?;
        println!("V0 = {v0}: min(margin + eps) = {worst:.3e}; matched exponential margin {:.3e} (eps {:.1e})", m.margin, m.eps_quad);
    }
    Ok(())
}

//! Shift-invert Krylov-Schur against the dense oracle on a small cone.

use leaky_surface::eigensolve::{dense_oracle, lowest_eigenpairs};
use leaky_surface::experiments::cone_problem;
use leaky_surface::transverse::{BiasSide, CouplingParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CouplingParams::new(1.0, 0.0, BiasSide::Interior)?;
    let p = cone_problem(std::f64::consts::FRAC_PI_4, 0, &params, 0.4, 12.0, 5.0)?;
    let r = lowest_eigenpairs(&p, 5, 1e-10)?;
    let d = dense_oracle(&p)?;
    println!("n = {}, restarts {}, shift {:.4}", p.dim(), r.iterations, r.shift);
    for i in 0..5 {
        println!("{:>2}: {:.12}  dense {:.12}  residual {:.1e}", i, r.values[i], d[i], r.residuals[i]);
    }
    println!("{}", r.to_json(false));
    Ok(())
}

//! Assembles an `m`-th partial wave of the cone and writes it as a Matrix
//! Market pair.

use leaky_surface::discretize::{assemble_partial_wave_with, AssemblyOptions, Domain, Grid2D};
use leaky_surface::geometry::ConeSpec;
use leaky_surface::transverse::{BiasSide, CouplingParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let theta = std::f64::consts::FRAC_PI_4;
    let grid = Grid2D::cone_aligned(theta, 0.25, 20.0, 6.0)?;
    let params = CouplingParams::new(1.0, 0.3, BiasSide::Interior)?;
    let opts = AssemblyOptions { domain: Domain::Tube { width: 6.0 } };
    let p = assemble_partial_wave_with(1, &ConeSpec::new(theta)?, &params, &grid, &opts)?;
    println!("unknowns {}, delta nodes {}, asymmetry {}", p.dim(), p.meta.delta_nodes, p.asymmetry());
    let dir = std::env::temp_dir().join("leaky-surface-mtx");
    std::fs::create_dir_all(&dir)?;
    p.write_matrix_market(&dir, "cone_m1")?;
    println!("wrote {}", dir.join("cone_m1_A.mtx").display());
    Ok(())
}

//! Fundamental forms, curvatures and layer Jacobian of a cone, with the
//! finite-difference check.

use leaky_surface::geometry::{cone_surface, fd_order, fd_principal_curvatures, ConeSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let theta = std::f64::consts::FRAC_PI_4;
    let surf = cone_surface(&ConeSpec::new(theta)?);
    for s in [[1.0, 0.0], [0.0, 2.0], [3.0, 4.0]] {
        let c = surf.curvatures(s)?;
        let fd = fd_principal_curvatures(surf.chart.as_ref(), s, 1e-3);
        println!(
            "s = {s:?}: k = ({:.6}, {:.6}), K = {:.1e}, M = {:.6}; fd k2 = {:.6}; order {:.2}",
            c.k1,
            c.k2,
            c.gauss,
            c.mean,
            fd.k2,
            fd_order(surf.chart.as_ref(), s, 1e-2)
        );
    }
    for u in [-0.5, 0.0, 0.5] {
        println!("xi([1, 0], {u}) = {:.6}", surf.layer_jacobian([1.0, 0.0], u)?);
    }
    println!("tip singular: {}", surf.is_singular([0.0, 0.0]));
    Ok(())
}

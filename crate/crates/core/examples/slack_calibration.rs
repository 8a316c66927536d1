//! Straight-line calibration of the discretization slack `C h`.

use leaky_surface::experiments::calibrate_slack;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = calibrate_slack(1.0, &[0.4, 0.2, 0.1], 30.0, 10.0)?;
    for (h, v) in c.spacings.iter().zip(&c.values) {
        println!("h = {h}: {v:.10}  (error {:+.3e})", v - c.reference);
    }
    println!("reference {:.10}, C = {:.3e}, observed order {:.2}", c.reference, c.constant, c.observed_order);
    Ok(())
}

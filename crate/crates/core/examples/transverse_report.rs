//! The full transverse table written as CSV and SVG.

use leaky_surface::experiments::{plot_report, transverse_report, write_csv, TransverseConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = transverse_report(&TransverseConfig::default(), 7)?;
    let dir = std::env::temp_dir().join("leaky-surface-transverse");
    std::fs::create_dir_all(&dir)?;
    write_csv(&report, &dir.join("transverse.csv"))?;
    plot_report(&report, &dir.join("transverse.svg"))?;
    println!("{} verdicts, exit code {}, written to {}", report.verdicts.len(), report.exit_code(), dir.display());
    Ok(())
}

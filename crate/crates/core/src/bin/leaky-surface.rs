use clap::{Parser, Subcommand, ValueEnum};
use leaky_surface::experiments::{
    cone_bias_scan, default_slack, exterior_positivity_check, mode_scan, plot_report, rooftop_experiment,
    transverse_report, verify_surface, write_csv, write_json, ExperimentConfig, ExperimentError, ScanReport,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(version, about = "Spectral experiments for δ-interactions on cones and rooftops")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// TOML file; missing keys keep their defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// also write an SVG chart
    #[arg(long, global = true)]
    plot: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// threshold, boxed ground energies, Hardy margins
    Transverse,
    /// cone m = 0 ground state against V₀
    ConeScan,
    /// lowest values per partial wave
    ModeScan,
    /// exterior bias at V₀ ≥ α²
    ExteriorCheck,
    /// broken-line cross-section and trial energy
    Rooftop,
    /// sample a surface against the standing assumptions
    VerifySurface,
}

fn run(cli: &Cli) -> Result<ScanReport, ExperimentError> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::from_toml(&std::fs::read_to_string(p)?)?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
        cfg.verify_surface.probe.seed = s;
    }
    match cli.cmd {
        Cmd::Transverse => transverse_report(&cfg.transverse, cfg.seed),
        Cmd::ConeScan => cone_bias_scan(&cfg.cone_scan, default_slack()?),
        Cmd::ModeScan => mode_scan(&cfg.mode_scan, default_slack()?),
        Cmd::ExteriorCheck => exterior_positivity_check(&cfg.exterior_check, default_slack()?),
        Cmd::Rooftop => rooftop_experiment(&cfg.rooftop, default_slack()?),
        Cmd::VerifySurface => verify_surface(&cfg.verify_surface),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = std::fs::create_dir_all(&cli.out).map_err(ExperimentError::from).and_then(|_| {
        let stem = cli.out.join(&report.experiment_id);
        match cli.format {
            Format::Csv => write_csv(&report, &stem.with_extension("csv"))?,
            Format::Json => write_json(&report, &stem.with_extension("json"))?,
        }
        if cli.plot {
            plot_report(&report, &stem.with_extension("svg"))?;
        }
        Ok(())
    });
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    for v in &report.verdicts {
        println!("{:<12} {}: {}", v.verdict.to_string(), v.claim, v.inequality);
    }
    for n in &report.notes {
        println!("note: {n}");
    }
    ExitCode::from(report.exit_code() as u8)
}

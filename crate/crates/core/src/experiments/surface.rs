use super::config::SurfaceConfig;
use super::{ExperimentError, ScanReport, Verdict, VerdictRecord};
use crate::geometry::verify_assumptions;

/// Assumption probe of the configured surface as a report.
pub fn verify_surface(cfg: &SurfaceConfig) -> Result<ScanReport, ExperimentError> {
    let surf = cfg.surface.build()?;
    let a = verify_assumptions(&surf, &cfg.probe);
    let mut report = ScanReport::new("verify-surface", "radius", cfg);
    report.axis_values = a.curvature_shells.iter().map(|s| s.radius).collect();
    report.summary.insert("bilipschitz_c".into(), a.bilipschitz_c);
    report.summary.insert("curvature_decay_exponent".into(), a.curvature_decay_exponent);
    report.summary.insert("max_det_trace_mismatch".into(), a.max_det_trace_mismatch);
    report.verdicts.push(VerdictRecord::check(
        "chart bi-Lipschitz",
        format!("0 < c = {:.6e} ≤ 1", a.bilipschitz_c),
        a.bilipschitz_ok,
        Verdict::Refuted,
    ));
    report.verdicts.push(VerdictRecord::check(
        "curvatures vanish at infinity",
        format!("log-log slope of sup|k| = {:.4}", a.curvature_decay_exponent),
        a.curvature_decays,
        Verdict::Refuted,
    ));
    report.verdicts.push(VerdictRecord::check(
        "metric uniformly elliptic",
        format!("observed {:?} within declared {:?}", a.observed_ellipticity, a.declared_ellipticity),
        a.ellipticity_ok,
        Verdict::Refuted,
    ));
    report.notes.extend(a.unchecked.iter().map(|u| format!("not checked: {u}")));
    report.extra = Some(serde_json::to_value(&a).map_err(|e| ExperimentError::Output(e.to_string()))?);
    Ok(report)
}

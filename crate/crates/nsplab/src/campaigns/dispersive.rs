//! Whole-space dispersive decay-rate scans: Gaussian-profile sup-norm fits
//! against the `d/2` rate, swept over the viscosity.

use crate::config::ExperimentConfig;
use crate::manifest::{CriterionOutcome, CsvWriter};
use crate::LabError;
use dispersive_oracle::report::ScanSummary;
use dispersive_oracle::scans::{geom_times, sup_norm_scan, ScanOptions};
use dispersive_oracle::RadialProfile;
use linear_semigroup::{DispersionSymbol, Variant};
use std::io::Write;
use std::path::Path;

pub fn run(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<CriterionOutcome>, LabError> {
    let kappa0 = cfg.physics.kappa0;
    let profile = RadialProfile::gaussian(1.0);
    let t_list = geom_times(10.0, 200.0, 10);
    let tol = cfg.tolerance("dispersive_exponent_tol", 0.15);
    let spread_tol = cfg.tolerance("dispersive_spread_tol", 0.10);
    let mut outcomes = Vec::new();
    for d in [3usize, 2] {
        let mut csv = CsvWriter::create(
            &out_dir.join(format!("dispersive_scan_d{d}.csv")),
            "eps,kappa0,d,t,value",
        )?;
        let mut exponents = Vec::new();
        for &eps in &cfg.physics.epsilon {
            let disp = DispersionSymbol::new(Variant::Electron, eps);
            let opts = ScanOptions {
                d,
                window: (10.0, 200.0),
                ..ScanOptions::default()
            };
            let fit = sup_norm_scan(&profile, &disp, kappa0, &t_list, &opts)
                .map_err(|e| LabError::Campaign(e.to_string()))?;
            for (t, v) in fit.times.iter().zip(&fit.values) {
                csv.row(&[eps, kappa0, d as f64, *t, *v])?;
            }
            let summary = ScanSummary::new(eps, kappa0, d, &fit, d as f64 / 2.0, tol);
            let mut jf = std::fs::File::create(
                out_dir.join(format!("dispersive_summary_d{d}_eps{eps:e}.json")),
            )?;
            jf.write_all(summary.to_json().as_bytes())?;
            outcomes.push(CriterionOutcome::upper_bound(
                &format!("dispersive_rate_d{d}_eps{eps:e}"),
                (fit.fitted_exponent - d as f64 / 2.0).abs(),
                tol,
                format!(
                    "fitted exponent {:.3} vs {} over t in [10, 200], residual {:.2e}",
                    fit.fitted_exponent,
                    d as f64 / 2.0,
                    fit.residual
                ),
            ));
            exponents.push(fit.fitted_exponent);
        }
        let spread = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - exponents.iter().copied().fold(f64::INFINITY, f64::min);
        outcomes.push(CriterionOutcome::upper_bound(
            &format!("dispersive_rate_uniformity_d{d}"),
            spread,
            spread_tol,
            format!("exponent spread across eps sweep: {exponents:?}"),
        ));
    }
    Ok(outcomes)
}

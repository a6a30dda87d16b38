//! Ion suite: dispersion-relation pointwise properties and the whole-space
//! ion decay scans.

use crate::config::ExperimentConfig;
use crate::manifest::{CriterionOutcome, CsvWriter};
use crate::LabError;
use dispersive_oracle::ion::{ion_b_properties, ion_b_report};
use dispersive_oracle::report::ScanSummary;
use dispersive_oracle::scans::{geom_times, ion_decay_scan, ScanOptions};
use dispersive_oracle::RadialProfile;
use std::io::Write;
use std::path::Path;

pub fn run(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<CriterionOutcome>, LabError> {
    let kappa0 = cfg.physics.kappa0;
    let mut outcomes = Vec::new();
    let mut reports = Vec::new();
    let bprime_floor = 1.0 / (2.0 * 2.0f64.sqrt()) - 1e-9;

    let mut csv = CsvWriter::create(
        &out_dir.join("ion_dispersion.csv"),
        "eps,region_end,min_b_prime,region_root_count,first_window_root,b3_at_root",
    )?;
    for &eps in &cfg.physics.epsilon {
        let report = ion_b_report(eps, kappa0);
        outcomes.push(CriterionOutcome::lower_bound(
            &format!("ion_min_b_prime_eps{eps:e}"),
            report.min_b_prime,
            bprime_floor,
            format!("min b' on [0, {:.3}]", report.region_end),
        ));
        let arity = ion_b_properties(eps, kappa0);
        outcomes.push(CriterionOutcome::new(
            &format!("ion_inflection_unique_eps{eps:e}"),
            arity.is_ok(),
            report.region_roots.len() as f64,
            1.0,
            match &arity {
                Ok(r) => format!("single b'' zero at {:.6} inside the cutoff region", r.region_roots[0]),
                Err(e) => e.to_string(),
            },
        ));
        if let Some((r0, b3, iota, c2)) = report.inflection {
            outcomes.push(CriterionOutcome::new(
                &format!("ion_b3_positive_eps{eps:e}"),
                b3 > 0.0 && c2 > 0.0 && (1.0..=10.0).contains(&r0),
                b3,
                0.0,
                format!("b''' = {b3:.5} at r0 = {r0:.5}, floor {c2:.5} on iota = {iota:.3}"),
            ));
        }
        csv.row(&[
            eps,
            report.region_end,
            report.min_b_prime,
            report.region_roots.len() as f64,
            report.window_roots.first().copied().unwrap_or(f64::NAN),
            report.inflection.map(|i| i.1).unwrap_or(f64::NAN),
        ])?;
        reports.push(report);
    }

    // decay scans on the small-viscosity members of the sweep (d = 3)
    let profile = RadialProfile::gaussian(1.0);
    let t_list = geom_times(10.0, 200.0, 10);
    let tol = cfg.tolerance("ion_decay_tol", 0.2);
    let mut exponents = Vec::new();
    for &eps in cfg.physics.epsilon.iter().filter(|&&e| e <= 0.1 + 1e-12) {
        let opts = ScanOptions {
            d: 3,
            window: (10.0, 200.0),
            ..ScanOptions::default()
        };
        let fit = ion_decay_scan(&profile, eps, kappa0, &t_list, &opts)
            .map_err(|e| LabError::Campaign(e.to_string()))?;
        let summary = ScanSummary::new(eps, kappa0, 3, &fit, 4.0 / 3.0, tol);
        let mut jf = std::fs::File::create(out_dir.join(format!("ion_decay_eps{eps:e}.json")))?;
        jf.write_all(summary.to_json().as_bytes())?;
        outcomes.push(CriterionOutcome::upper_bound(
            &format!("ion_decay_rate_eps{eps:e}"),
            (fit.fitted_exponent - 4.0 / 3.0).abs(),
            tol,
            format!("fitted exponent {:.3} vs 4/3", fit.fitted_exponent),
        ));
        exponents.push(fit.fitted_exponent);
    }
    let mut jf = std::fs::File::create(out_dir.join("ion_summary.json"))?;
    jf.write_all(
        serde_json::to_string_pretty(&serde_json::json!({
            "schema": 1,
            "kappa0": kappa0,
            "decay_exponents": exponents,
            "dispersion": reports,
        }))
        .unwrap()
        .as_bytes(),
    )?;
    Ok(outcomes)
}

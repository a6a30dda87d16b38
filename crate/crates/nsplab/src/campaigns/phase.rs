//! Phase-bound and normal-form symbol scans: positivity of `phi_11`, the `A`
//! lower bound, reciprocal-phase refinement stability, the Hessian
//! determinant floor and the divided-symbol derivative bounds.

use crate::config::ExperimentConfig;
use crate::manifest::{CriterionOutcome, CsvWriter};
use crate::LabError;
use dispersive_oracle::hessian::{hessian_det_scan, hessian_lower_bound};
use phase_normal_form::scans::{
    phase_bound_scan, reciprocal_phase_refinement, symbol_derivative_scan,
};
use std::io::Write;
use std::path::Path;

pub fn run(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<CriterionOutcome>, LabError> {
    let kappa0 = cfg.physics.kappa0;
    let mut outcomes = Vec::new();
    let mut history = Vec::new();
    let mut csv = CsvWriter::create(
        &out_dir.join("phase_scan.csv"),
        "eps,xi_r,eta_r,cos_theta,phi11,bound_ratio",
    )?;
    for &eps in &cfg.physics.epsilon {
        // headline grid: >= 1e6 (xi, eta) points per eps
        let report = phase_bound_scan(eps, kappa0, 100);
        outcomes.push(CriterionOutcome::lower_bound(
            &format!("phase_phi11_positive_eps{eps:e}"),
            report.min_phi11,
            cfg.tolerance("phi11_floor", f64::MIN_POSITIVE),
            format!("min over {} grid points", report.grid_points),
        ));
        outcomes.push(CriterionOutcome::lower_bound(
            &format!("phase_a_bound_eps{eps:e}"),
            report.min_a,
            report.a_bound,
            format!("A >= 1 - 32 kappa0^2 = {:.6}", report.a_bound),
        ));
        // one refinement of the reciprocal-phase constant
        let (ratios, stable) = reciprocal_phase_refinement(eps, kappa0, &[64, 96]);
        outcomes.push(CriterionOutcome::new(
            &format!("reciprocal_phase_stable_eps{eps:e}"),
            stable && ratios.iter().all(|r| r.is_finite()),
            ratios[1] / ratios[0],
            1.05,
            format!("C* across refinement: {ratios:?}"),
        ));
        // sampled CSV rows on a coarse orbit grid
        let fam = phase_normal_form::PhaseFamily::new(
            linear_semigroup::Variant::Electron,
            eps,
            kappa0,
            1,
            1,
        );
        let rmax = 4.0 * (kappa0 / eps).sqrt();
        for ir in 0..12 {
            for ic in 0..6 {
                let rx = rmax * (ir as f64 + 0.5) / 12.0;
                let ct = -1.0 + 2.0 * (ic as f64 + 0.5) / 6.0;
                let st = (1.0 - ct * ct).max(0.0).sqrt();
                let xi = [rx, 0.0, 0.0];
                let eta = [rx * ct, rx * st, 0.0];
                let phi = fam.value(&xi, &eta);
                let b = fam.disp.radicand(rx).max(0.0).sqrt();
                let ratio = if phi > 0.0 { 1.0 / (phi * b) } else { f64::NAN };
                csv.row(&[eps, rx, rx, ct, phi, ratio])?;
            }
        }
        history.push((eps, report.min_phi11, report.min_a, ratios));
    }

    // Hessian determinant floor (kappa0 = 1e-3 by convention for this scan)
    for d in [2usize, 3] {
        let h = hessian_det_scan(d, &cfg.physics.epsilon, 1e-3, 6000);
        outcomes.push(CriterionOutcome::lower_bound(
            &format!("hessian_det_floor_d{d}"),
            h.min_det,
            hessian_lower_bound(d),
            format!(
                "min {:.6e} at eps={:.3e}, r={:.4}",
                h.min_det, h.worst_eps, h.worst_r
            ),
        ));
    }

    // derivative bounds for all sign pairs at the sweep ends, with one
    // refinement for stability
    let eps_ends = [
        *cfg.physics.epsilon.first().unwrap(),
        *cfg.physics.epsilon.last().unwrap(),
    ];
    for &eps in &eps_ends {
        for (j, k) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2)] {
            let coarse = symbol_derivative_scan(eps, kappa0, j, k, 8)
                .map_err(|e| LabError::Campaign(e.to_string()))?;
            let fine = symbol_derivative_scan(eps, kappa0, j, k, 12)
                .map_err(|e| LabError::Campaign(e.to_string()))?;
            let ratio_phi = fine.max_ratio_phi / coarse.max_ratio_phi;
            let bounded = coarse.max_ratio_phi.is_finite()
                && fine.max_ratio_phi.is_finite()
                && coarse.max_ratio_phi_sq.is_finite()
                && fine.max_ratio_phi_sq.is_finite();
            outcomes.push(CriterionOutcome::new(
                &format!("symbol_derivative_stable_jk{j}{k}_eps{eps:e}"),
                bounded && (0.8..=1.25).contains(&ratio_phi),
                ratio_phi,
                1.25,
                format!(
                    "max |d(m/phi)|/min<.> = {:.3} -> {:.3}; m/phi^2: {:.3} -> {:.3}",
                    coarse.max_ratio_phi,
                    fine.max_ratio_phi,
                    coarse.max_ratio_phi_sq,
                    fine.max_ratio_phi_sq
                ),
            ));
        }
    }

    let mut jf = std::fs::File::create(out_dir.join("phase_summary.json"))?;
    let doc = serde_json::json!({
        "schema": 1,
        "kappa0": kappa0,
        "per_eps": history.iter().map(|(eps, phi, a, ratios)| serde_json::json!({
            "eps": eps, "min_phi11": phi, "min_a": a, "cstar_refinement": ratios,
        })).collect::<Vec<_>>(),
    });
    jf.write_all(serde_json::to_string_pretty(&doc).unwrap().as_bytes())?;
    Ok(outcomes)
}

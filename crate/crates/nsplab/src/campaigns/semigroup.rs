//! Green-matrix verification: closed forms against the scaling-and-squaring
//! matrix exponential oracle, the determinant identity, the high-frequency
//! damping sweep and the heat-smoothing bounds.

use crate::config::ExperimentConfig;
use crate::manifest::{CriterionOutcome, CsvWriter};
use crate::LabError;
use linear_semigroup::damping::{heat_smoothing_scan, verify_high_freq_damping};
use linear_semigroup::oracle::expm_neg_t_a;
use linear_semigroup::{green_matrix, DispersionSymbol, Variant};
use std::path::Path;

/// Radii per eps: logarithmic coverage of both regimes plus a tight band
/// straddling the eigenvalue crossing.
fn sample_radii(disp: &DispersionSymbol) -> Vec<f64> {
    let rc = disp.crossing_radius();
    let mut rs = vec![0.0];
    for i in 0..60 {
        rs.push(0.02 * (150.0f64).powf(i as f64 / 59.0)); // 0.02 .. 3
    }
    for i in 0..45 {
        rs.push(rc * 0.2 * (12.0f64).powf(i as f64 / 44.0)); // 0.2 rc .. 2.4 rc
    }
    // |radicand| < 1e-6 band: radicand ~ rho'(rc) (r - rc)
    let slope = {
        let h = rc * 1e-6;
        ((disp.radicand(rc + h) - disp.radicand(rc - h)) / (2.0 * h)).abs()
    };
    let dr = 1e-6 / slope.max(1e-12);
    for f in [-1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0] {
        rs.push((rc + f * dr).max(0.0));
    }
    rs
}

pub fn run(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<CriterionOutcome>, LabError> {
    let kappa0 = cfg.physics.kappa0;
    let times = [0.0, 1e-3, 1e-2, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0, 120.0, 200.0];
    let mut worst_rel = 0.0f64;
    let mut worst_det = 0.0f64;
    let mut samples = 0usize;
    let mut worst_case = (0.0f64, 0.0f64, 0.0f64); // (eps, r, t)
    for &eps in &cfg.physics.epsilon {
        for variant in [Variant::Electron, Variant::Ion] {
            let disp = DispersionSymbol::new(variant, eps);
            for r in sample_radii(&disp) {
                for &t in &times {
                    let g = green_matrix(t, r, &disp);
                    let gm = g.as_matrix();
                    let o = expm_neg_t_a(t, r, &disp);
                    let scale = o
                        .iter()
                        .flatten()
                        .map(|x| x.abs())
                        .fold(0.0f64, f64::max)
                        .max(1e-280);
                    let mut rel = 0.0f64;
                    for i in 0..2 {
                        for j in 0..2 {
                            rel = rel.max((gm[i][j] - o[i][j]).abs() / scale);
                        }
                    }
                    if rel > worst_rel {
                        worst_rel = rel;
                        worst_case = (eps, r, t);
                    }
                    let det_defect = (g.det() - (-2.0 * eps * r * r * t).exp()).abs();
                    worst_det = worst_det.max(det_defect);
                    samples += 1;
                }
            }
        }
    }

    let t_grid: Vec<f64> = (0..=200)
        .map(|i| i as f64)
        .chain((1..20).map(|i| 0.05 * i as f64))
        .collect();
    let damping = verify_high_freq_damping(
        Variant::Electron,
        &cfg.physics.epsilon,
        &t_grid,
        200,
        kappa0,
    );
    let heat = heat_smoothing_scan(&cfg.physics.epsilon, &t_grid, kappa0, &[1, 2]);

    let mut csv = CsvWriter::create(&out_dir.join("damping.csv"), "eps,t,r,entry,boosted_ratio")?;
    csv.row(&[
        damping.worst_eps,
        damping.worst_t,
        damping.worst_r,
        damping.worst_entry as f64,
        damping.max_ratio,
    ])?;

    let tol_oracle = cfg.tolerance("green_oracle_rel", 1e-10);
    let tol_det = cfg.tolerance("det_identity_abs", 1e-12);
    let tol_damping = cfg.tolerance("damping_bound", 3.0);
    Ok(vec![
        CriterionOutcome::upper_bound(
            "green_matrix_oracle_rel_error",
            worst_rel,
            tol_oracle,
            format!(
                "{samples} (xi, t, eps) triples incl. |radicand| < 1e-6 band; worst at eps={:.3e} r={:.6} t={}",
                worst_case.0, worst_case.1, worst_case.2
            ),
        ),
        CriterionOutcome::new(
            "green_matrix_sample_count",
            samples >= 10_000,
            samples as f64,
            10_000.0,
            "oracle-equivalence sample size".into(),
        ),
        CriterionOutcome::upper_bound(
            "determinant_identity_abs_error",
            worst_det,
            tol_det,
            "G1 G3 + G2^2 vs exp(-2 eps |xi|^2 t)".into(),
        ),
        CriterionOutcome::upper_bound(
            "high_freq_damping_constant",
            damping.max_ratio,
            tol_damping,
            format!(
                "sup |(1-chi) G_j| e^(kappa0 t/4) over eps x t x xi grid ({} samples), c0 = {:.3e}",
                damping.samples, damping.c0
            ),
        ),
        CriterionOutcome::upper_bound(
            "heat_smoothing_k1",
            heat.bounds[0].1,
            cfg.tolerance("heat_smoothing", 2.0),
            "(1+t) sup |e^(eps t Lap)(eps Lap) chi|".into(),
        ),
        CriterionOutcome::upper_bound(
            "heat_smoothing_k2",
            heat.bounds[1].1,
            cfg.tolerance("heat_smoothing", 2.0),
            "(1+t)^2 sup |e^(eps t Lap)(eps Lap)^2 chi|".into(),
        ),
    ])
}

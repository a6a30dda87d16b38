//! Splitting-consistency runs: full system vs main + perturbation, plus the
//! irrotationality propagation of the main system.

use crate::config::ExperimentConfig;
use crate::manifest::{CriterionOutcome, CsvWriter};
use crate::LabError;
use energy_diagnostics::record::record_single;
use nsp_solver::data::DataParams;
use nsp_solver::rhs::SystemKind;
use nsp_solver::splitting::{run_splitting_consistency, SplittingConfig};
use nsp_solver::Variant;
use spectral_core::project::curl_rel_l2;
use spectral_core::Grid;
use std::path::Path;

fn grid_2d() -> Grid {
    Grid::new(2, 64, 8.0 * std::f64::consts::PI, 2.0 / 3.0).expect("valid grid")
}

fn grid_3d() -> Grid {
    Grid::new(3, 32, 8.0 * std::f64::consts::PI, 2.0 / 3.0).expect("valid grid")
}

pub fn run(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<CriterionOutcome>, LabError> {
    let eps = cfg.physics.epsilon[0];
    let delta0 = cfg.physics.delta0;
    let mut outcomes = Vec::new();
    let mut csv = CsvWriter::create(
        &out_dir.join("splitting.csv"),
        "case,t,rel_h3_deviation,perturb_h3",
    )?;

    let cases: [(&str, Grid, f64, f64); 3] = [
        ("2d64", grid_2d(), 0.01 * eps, 1e-6),
        ("3d32", grid_3d(), 0.01 * eps, 1e-5),
        ("2d64_irrotational", grid_2d(), 0.0, 1e-10),
    ];
    for (label, grid, pu_amp, tol) in cases {
        let config = SplittingConfig {
            grid,
            variant: Variant::Electron,
            epsilon: eps,
            t_final: cfg.run.t_final,
            dt: cfg.run.dt,
            data: DataParams {
                seed: cfg.seed,
                band: 1.5,
                delta0,
                pu_amplitude: pu_amp,
            },
            sample_stride: cfg.run.sample_stride,
        };
        let report =
            run_splitting_consistency(&config).map_err(|e| LabError::Campaign(e.to_string()))?;
        for i in 0..report.times.len() {
            csv.row_with_label(
                label,
                &[report.times[i], report.deviations[i], report.perturb_h3[i]],
            )?;
        }
        outcomes.push(CriterionOutcome::upper_bound(
            &format!("splitting_consistency_{label}"),
            report.max_rel_h3_deviation,
            cfg.tolerance(&format!("splitting_{label}"), tol),
            format!(
                "max_t ||full - (main + perturb)||_H3 / ||full||_H3 over t in [0, {}]",
                cfg.run.t_final
            ),
        ));
    }

    // irrotationality propagation on a main-system run to T = 2
    let grid = grid_2d();
    let data = DataParams {
        seed: cfg.seed,
        band: 1.5,
        delta0,
        pu_amplitude: 0.0,
    };
    let s0 = nsp_solver::data::make_initial_data(&grid, Variant::Electron, eps, &data);
    let curl0 = curl_rel_l2(&s0.u);
    let traj = record_single(SystemKind::Main, true, s0, cfg.run.dt, (2.0 / cfg.run.dt) as usize, 20)
        .map_err(|e| LabError::Campaign(e.to_string()))?;
    let max_curl = traj
        .states
        .iter()
        .map(|s| curl_rel_l2(&s.u))
        .fold(0.0f64, f64::max);
    outcomes.push(CriterionOutcome::upper_bound(
        "irrotationality_propagation",
        max_curl,
        cfg.tolerance("curl_bound", 1e-8),
        format!("curl diagnostic over main-system run to T = 2 (t=0 value {curl0:.2e})"),
    ));
    Ok(outcomes)
}

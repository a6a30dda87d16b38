//! Parameter sweeps: independent runs over an axis with a bounded worker
//! pool, isolated per-run output directories and an aggregated uniformity
//! report.

use crate::config::{ConfigError, ExperimentConfig};
use crate::manifest::RunManifest;
use crate::LabError;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Epsilon,
    Kappa0,
    Grid,
}

impl std::str::FromStr for SweepAxis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eps" | "epsilon" => Ok(SweepAxis::Epsilon),
            "kappa0" => Ok(SweepAxis::Kappa0),
            "grid" => Ok(SweepAxis::Grid),
            other => Err(format!("unknown sweep axis '{other}' (eps | kappa0 | grid)")),
        }
    }
}

fn apply_axis(template: &ExperimentConfig, axis: SweepAxis, value: f64) -> ExperimentConfig {
    let mut cfg = template.clone();
    match axis {
        SweepAxis::Epsilon => cfg.physics.epsilon = vec![value],
        SweepAxis::Kappa0 => cfg.physics.kappa0 = value,
        SweepAxis::Grid => cfg.grid.n = value as usize,
    }
    cfg
}

/// Validate every point up front, then run with at most `workers` threads.
pub fn sweep(
    template: &ExperimentConfig,
    axis: SweepAxis,
    values: &[f64],
    workers: usize,
    out_root: &Path,
) -> Result<Vec<(f64, RunManifest)>, LabError> {
    if values.is_empty() {
        return Err(LabError::Config(ConfigError::Invalid {
            field: "sweep.values",
            reason: "axis values must be a non-empty list".into(),
        }));
    }
    let configs: Vec<(f64, ExperimentConfig, PathBuf)> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let cfg = apply_axis(template, axis, v);
            let dir = out_root.join(format!("sweep_{i:03}"));
            (v, cfg, dir)
        })
        .collect();
    // abort before launch when any point is invalid
    for (_, cfg, _) in &configs {
        cfg.validate()?;
    }

    let results: Mutex<Vec<(usize, f64, RunManifest)>> = Mutex::new(Vec::new());
    let errors: Mutex<Vec<String>> = Mutex::new(Vec::new());
    let next: Mutex<usize> = Mutex::new(0);
    let workers = workers.max(1).min(configs.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = {
                    let mut guard = next.lock().unwrap();
                    if *guard >= configs.len() {
                        return;
                    }
                    let i = *guard;
                    *guard += 1;
                    i
                };
                let (value, cfg, dir) = &configs[idx];
                match crate::run(cfg, dir) {
                    Ok(m) => results.lock().unwrap().push((idx, *value, m)),
                    Err(e) => errors.lock().unwrap().push(format!("value {value}: {e}")),
                }
            });
        }
    });
    let errors = errors.into_inner().unwrap();
    if !errors.is_empty() {
        return Err(LabError::Campaign(errors.join("; ")));
    }
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|r| r.0);
    let results: Vec<(f64, RunManifest)> = results.into_iter().map(|(_, v, m)| (v, m)).collect();

    // uniformity report: per-criterion max/min of the measured values
    let mut names: Vec<String> = results
        .iter()
        .flat_map(|(_, m)| m.criteria.iter().map(|c| c.name.clone()))
        .collect();
    names.sort();
    names.dedup();
    let rows: Vec<serde_json::Value> = names
        .iter()
        .map(|name| {
            let vals: Vec<f64> = results
                .iter()
                .flat_map(|(_, m)| {
                    m.criteria
                        .iter()
                        .filter(|c| &c.name == name)
                        .map(|c| c.value)
                })
                .collect();
            let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
            serde_json::json!({ "criterion": name, "min": min, "max": max,
                "spread": if min != 0.0 { max / min } else { f64::NAN } })
        })
        .collect();
    let mut jf = std::fs::File::create(out_root.join("sweep_uniformity.json"))?;
    jf.write_all(
        serde_json::to_string_pretty(&serde_json::json!({
            "schema": 1,
            "axis_values": values,
            "criteria": rows,
            "all_pass": results.iter().all(|(_, m)| m.pass),
        }))
        .unwrap()
        .as_bytes(),
    )?;
    Ok(results)
}

//! Batch orchestration: configuration parsing and validation, campaign
//! execution with CSV/JSON artifacts, reproducible manifests, parameter
//! sweeps and plot-data emission.

pub mod campaigns;
pub mod config;
pub mod manifest;
pub mod plots;
pub mod sweep;

pub use config::{CampaignKind, ConfigError, ExperimentConfig};
pub use manifest::{CriterionOutcome, RunManifest};

use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("campaign failed: {0}")]
    Campaign(String),
}

/// Execute one campaign: validates, runs, writes artifacts and the manifest
/// into `out_dir`, and returns the manifest.
pub fn run(config: &ExperimentConfig, out_dir: &Path) -> Result<RunManifest, LabError> {
    config.validate()?;
    std::fs::create_dir_all(out_dir)?;
    let started = std::time::Instant::now();
    let mut criteria = match config.kind {
        CampaignKind::SemigroupVerify => campaigns::semigroup::run(config, out_dir)?,
        CampaignKind::DispersiveScan => campaigns::dispersive::run(config, out_dir)?,
        CampaignKind::PhaseScan => campaigns::phase::run(config, out_dir)?,
        CampaignKind::SplittingRun => campaigns::splitting::run(config, out_dir)?,
        CampaignKind::EnergyCampaign => campaigns::energy::run(config, out_dir)?,
        CampaignKind::IonSuite => campaigns::ion::run(config, out_dir)?,
    };
    criteria.sort_by(|a, b| a.name.cmp(&b.name));
    let manifest = RunManifest::new(config, criteria, started.elapsed().as_secs_f64());
    manifest.write_atomic(&out_dir.join("manifest.json"))?;
    Ok(manifest)
}

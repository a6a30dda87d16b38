//! Run manifests: config hash, code version, cutoff-profile hash, wall time
//! and per-criterion verdicts; written atomically at run end.

use crate::config::ExperimentConfig;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub threshold: f64,
    pub detail: String,
}

impl CriterionOutcome {
    pub fn new(name: &str, pass: bool, value: f64, threshold: f64, detail: String) -> Self {
        CriterionOutcome {
            name: name.to_string(),
            pass,
            value,
            threshold,
            detail,
        }
    }

    /// Pass iff `value <= threshold`.
    pub fn upper_bound(name: &str, value: f64, threshold: f64, detail: String) -> Self {
        Self::new(name, value <= threshold, value, threshold, detail)
    }

    /// Pass iff `value >= threshold`.
    pub fn lower_bound(name: &str, value: f64, threshold: f64, detail: String) -> Self {
        Self::new(name, value >= threshold, value, threshold, detail)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: u32,
    pub kind: String,
    pub config_hash: String,
    pub code_version: String,
    pub chi_profile_hash: String,
    pub seed: u64,
    pub wall_time_s: f64,
    pub pass: bool,
    pub criteria: Vec<CriterionOutcome>,
}

impl RunManifest {
    pub fn new(config: &ExperimentConfig, criteria: Vec<CriterionOutcome>, wall_time_s: f64) -> Self {
        let pass = criteria.iter().all(|c| c.pass);
        RunManifest {
            schema: 1,
            kind: config.kind.to_string(),
            config_hash: config.hash(),
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            chi_profile_hash: spectral_core::cutoff::profile_hash(),
            seed: config.seed,
            wall_time_s,
            pass,
            criteria,
        }
    }

    /// Write via a temporary file followed by rename.
    pub fn write_atomic(&self, path: &Path) -> std::io::Result<()> {
        let tmp = path.with_extension("json.tmp");
        {
            let mut f = std::fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string_pretty(self).expect("manifest serializes").as_bytes())?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn read(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
    }
}

/// Deterministic CSV writer helper: fixed float formatting so identical
/// configs byte-reproduce their outputs.
pub struct CsvWriter {
    file: std::fs::File,
}

impl CsvWriter {
    pub fn create(path: &Path, header: &str) -> std::io::Result<Self> {
        let mut file = std::fs::File::create(path)?;
        writeln!(file, "{header}")?;
        Ok(CsvWriter { file })
    }

    pub fn row(&mut self, fields: &[f64]) -> std::io::Result<()> {
        let line: Vec<String> = fields.iter().map(|v| format!("{v:.12e}")).collect();
        writeln!(self.file, "{}", line.join(","))
    }

    pub fn row_with_label(&mut self, label: &str, fields: &[f64]) -> std::io::Result<()> {
        let line: Vec<String> = fields.iter().map(|v| format!("{v:.12e}")).collect();
        writeln!(self.file, "{label},{}", line.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_roundtrip_and_conjunction() {
        let cfg = ExperimentConfig::from_toml_str("kind = \"phase-scan\"").unwrap();
        let criteria = vec![
            CriterionOutcome::upper_bound("a", 0.5, 1.0, "ok".into()),
            CriterionOutcome::lower_bound("b", 2.0, 1.0, "ok".into()),
        ];
        let m = RunManifest::new(&cfg, criteria, 0.1);
        assert!(m.pass);
        let dir = std::env::temp_dir().join(format!("nsplab-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("manifest.json");
        m.write_atomic(&path).unwrap();
        let back = RunManifest::read(&path).unwrap();
        assert_eq!(back.config_hash, m.config_hash);
        assert_eq!(back.criteria.len(), 2);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn failed_criterion_fails_manifest() {
        let cfg = ExperimentConfig::from_toml_str("kind = \"phase-scan\"").unwrap();
        let criteria = vec![CriterionOutcome::upper_bound("x", 2.0, 1.0, "too big".into())];
        let m = RunManifest::new(&cfg, criteria, 0.0);
        assert!(!m.pass);
    }
}

//! Structured-text experiment configuration (TOML sections, all physical
//! parameters dimensionless). Every field is validated against the owning
//! module's preconditions before launch; the config hash is embedded in all
//! outputs.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CampaignKind {
    #[serde(rename = "semigroup-verify")]
    SemigroupVerify,
    #[serde(rename = "dispersive-scan")]
    DispersiveScan,
    #[serde(rename = "phase-scan")]
    PhaseScan,
    #[serde(rename = "splitting-run")]
    SplittingRun,
    #[serde(rename = "energy-campaign")]
    EnergyCampaign,
    #[serde(rename = "ion-suite")]
    IonSuite,
}

impl std::fmt::Display for CampaignKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CampaignKind::SemigroupVerify => "semigroup-verify",
            CampaignKind::DispersiveScan => "dispersive-scan",
            CampaignKind::PhaseScan => "phase-scan",
            CampaignKind::SplittingRun => "splitting-run",
            CampaignKind::EnergyCampaign => "energy-campaign",
            CampaignKind::IonSuite => "ion-suite",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridConfig {
    pub dim: usize,
    pub n: usize,
    pub box_length: f64,
    #[serde(default = "default_dealias")]
    pub dealias_fraction: f64,
}

fn default_dealias() -> f64 {
    2.0 / 3.0
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            dim: 2,
            n: 64,
            box_length: 8.0 * std::f64::consts::PI,
            dealias_fraction: default_dealias(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhysicsConfig {
    /// Viscosity sweep values in (0, 1].
    #[serde(default = "default_eps_grid")]
    pub epsilon: Vec<f64>,
    #[serde(default = "default_kappa0")]
    pub kappa0: f64,
    #[serde(default = "default_delta0")]
    pub delta0: f64,
    /// Negative-Sobolev order.
    #[serde(default = "default_s")]
    pub s: f64,
    /// Lebesgue exponent of the decay norms.
    #[serde(default = "default_p")]
    pub p: f64,
    /// Decay-norm derivative order sigma.
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    /// Energy order N (main system).
    #[serde(default = "default_n_order")]
    pub n_order: usize,
    /// Perturbation energy order M.
    #[serde(default = "default_m_order")]
    pub m_order: usize,
    /// Enforce the theorem-shaped regularity relations between sigma and N.
    #[serde(default)]
    pub theorem_mode: bool,
}

fn default_eps_grid() -> Vec<f64> {
    vec![1e-3, 1e-2, 1e-1, 1.0]
}
fn default_kappa0() -> f64 {
    1.0 / 200.0
}
fn default_delta0() -> f64 {
    0.05
}
fn default_s() -> f64 {
    0.4
}
fn default_p() -> f64 {
    8.0
}
fn default_sigma() -> f64 {
    5.0
}
fn default_n_order() -> usize {
    12
}
fn default_m_order() -> usize {
    3
}

impl Default for PhysicsConfig {
    fn default() -> Self {
        PhysicsConfig {
            epsilon: default_eps_grid(),
            kappa0: default_kappa0(),
            delta0: default_delta0(),
            s: default_s(),
            p: default_p(),
            sigma: default_sigma(),
            n_order: default_n_order(),
            m_order: default_m_order(),
            theorem_mode: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default = "default_t_final")]
    pub t_final: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_stride")]
    pub sample_stride: usize,
}

fn default_t_final() -> f64 {
    1.0
}
fn default_dt() -> f64 {
    0.01
}
fn default_stride() -> usize {
    5
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            t_final: default_t_final(),
            dt: default_dt(),
            sample_stride: default_stride(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: CampaignKind,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub physics: PhysicsConfig,
    #[serde(default)]
    pub run: RunConfig,
    /// Tolerance overrides keyed by criterion name.
    #[serde(default)]
    pub tolerances: std::collections::BTreeMap<String, f64>,
}

fn default_seed() -> u64 {
    20_260_810
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("failed to parse config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid field {field}: {reason}")]
    Invalid { field: &'static str, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, ConfigError> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// SHA-256 of the canonical serialized config.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.to_toml_string().as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(1..=3).contains(&self.grid.dim) {
            return Err(ConfigError::Invalid {
                field: "grid.dim",
                reason: format!("must be 1, 2 or 3 (got {})", self.grid.dim),
            });
        }
        if !self.grid.n.is_power_of_two() || self.grid.n < 8 {
            return Err(ConfigError::Invalid {
                field: "grid.n",
                reason: format!("must be a power of two >= 8 (got {})", self.grid.n),
            });
        }
        if self.grid.box_length <= 0.0 {
            return Err(ConfigError::Invalid {
                field: "grid.box_length",
                reason: "must be positive".into(),
            });
        }
        if !(self.grid.dealias_fraction > 0.0 && self.grid.dealias_fraction <= 1.0) {
            return Err(ConfigError::Invalid {
                field: "grid.dealias_fraction",
                reason: "must lie in (0, 1]".into(),
            });
        }
        if self.physics.epsilon.is_empty() {
            return Err(ConfigError::Invalid {
                field: "physics.epsilon",
                reason: "sweep axis must be a non-empty list".into(),
            });
        }
        for &eps in &self.physics.epsilon {
            if !(eps > 0.0 && eps <= 1.0) {
                return Err(ConfigError::Invalid {
                    field: "physics.epsilon",
                    reason: format!("values must lie in (0, 1] (got {eps})"),
                });
            }
        }
        if self.physics.kappa0 <= 0.0 {
            return Err(ConfigError::Invalid {
                field: "physics.kappa0",
                reason: "must be positive".into(),
            });
        }
        if !(self.physics.s > 0.0 && self.physics.s < 0.5) {
            return Err(ConfigError::Invalid {
                field: "physics.s",
                reason: format!("negative-Sobolev order must lie in (0, 1/2) (got {})", self.physics.s),
            });
        }
        if self.physics.p <= 2.0 {
            return Err(ConfigError::Invalid {
                field: "physics.p",
                reason: "decay exponent p must exceed 2".into(),
            });
        }
        if self.physics.theorem_mode {
            // global-existence hypotheses relate the decay order and the
            // energy order: sigma >= 5 and N >= sigma + 7
            if self.physics.sigma < 5.0 {
                return Err(ConfigError::Invalid {
                    field: "physics.sigma",
                    reason: format!(
                        "theorem-mode runs require sigma >= 5 (got sigma = {})",
                        self.physics.sigma
                    ),
                });
            }
            if (self.physics.n_order as f64) < self.physics.sigma + 7.0 {
                return Err(ConfigError::Invalid {
                    field: "physics.n_order",
                    reason: format!(
                        "theorem-mode runs require N >= sigma + 7 (got N = {}, sigma = {})",
                        self.physics.n_order, self.physics.sigma
                    ),
                });
            }
        }
        if self.run.dt <= 0.0 || self.run.t_final <= 0.0 {
            return Err(ConfigError::Invalid {
                field: "run.dt",
                reason: "time step and final time must be positive".into(),
            });
        }
        Ok(())
    }

    /// Tolerance with a default, overridable from the config.
    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal() {
        let cfg = ExperimentConfig::from_toml_str("kind = \"semigroup-verify\"").unwrap();
        assert_eq!(cfg.kind, CampaignKind::SemigroupVerify);
        cfg.validate().unwrap();
        assert_eq!(cfg.hash().len(), 64);
        assert_eq!(cfg.hash(), cfg.hash());
    }

    #[test]
    fn theorem_mode_regularity_constraint() {
        let text = r#"
kind = "energy-campaign"
[physics]
sigma = 5.0
n_order = 9
theorem_mode = true
"#;
        let cfg = ExperimentConfig::from_toml_str(text).unwrap();
        let err = cfg.validate().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("n_order"), "{msg}");
        assert!(msg.contains("N >= sigma + 7"), "{msg}");
    }

    #[test]
    fn empty_axis_rejected() {
        let text = r#"
kind = "dispersive-scan"
[physics]
epsilon = []
"#;
        let cfg = ExperimentConfig::from_toml_str(text).unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn hash_changes_with_content() {
        let a = ExperimentConfig::from_toml_str("kind = \"ion-suite\"").unwrap();
        let b = ExperimentConfig::from_toml_str("kind = \"ion-suite\"\nseed = 7").unwrap();
        assert_ne!(a.hash(), b.hash());
    }
}

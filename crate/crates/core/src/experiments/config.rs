//! Declarative experiment configuration, read from TOML. Unknown keys are
//! rejected so a typo cannot silently change a scenario.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::durations::ModelSpec;
use crate::error::{ModelError, Result};
use crate::price::MicrostructureSpec;

fn default_spacing() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario_id: String,
    pub model: ModelSpec,
    pub mu: f64,
    pub sigma_e: f64,
    #[serde(default = "default_micro")]
    pub micro: MicrostructureSpec,
    pub n_grid: Vec<usize>,
    pub replicates: usize,
    pub master_seed: u64,
    pub outputs: PathBuf,
    /// Calendar spacing T of the returns; 1 unless overridden.
    #[serde(default = "default_spacing")]
    pub spacing: f64,
    /// Null value mu0* for the t-test; defaults to the true growth rate
    /// lambda * mu (null hypothesis true).
    #[serde(default)]
    pub mu0_star: Option<f64>,
}

fn default_micro() -> MicrostructureSpec {
    MicrostructureSpec::None
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text)
            .map_err(|e| ModelError::Domain(format!("config parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ModelError::Domain(format!("cannot read config {path:?}: {e}")))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.scenario_id.is_empty()
            || !self
                .scenario_id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return Err(ModelError::Domain(format!(
                "scenario_id must be nonempty and filesystem-safe, got {:?}",
                self.scenario_id
            )));
        }
        self.model.validate()?;
        if self.sigma_e < 0.0 {
            return Err(ModelError::Domain("sigma_e must be >= 0".into()));
        }
        if self.n_grid.is_empty() || self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ModelError::Domain(
                "n_grid must be nonempty and strictly increasing".into(),
            ));
        }
        if self.replicates < 1 {
            return Err(ModelError::Domain("replicates must be >= 1".into()));
        }
        if self.spacing <= 0.0 {
            return Err(ModelError::Domain("spacing must be > 0".into()));
        }
        if let MicrostructureSpec::FractionalLeverage { delta, .. } = self.micro {
            match &self.model {
                ModelSpec::Lmsd(p) => {
                    if delta <= p.hurst - 0.5 {
                        return Err(ModelError::Domain(format!(
                            "leverage delta {delta} must exceed d_tau = H - 1/2 = {}",
                            p.hurst - 0.5
                        )));
                    }
                }
                _ => {
                    return Err(ModelError::Domain(
                        "fractional leverage requires an LMSD duration model".into(),
                    ))
                }
            }
        }
        Ok(())
    }
}

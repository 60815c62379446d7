//! Long-format CSV reports and the run manifest.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

use crate::error::{ModelError, Result};

use super::config::ExperimentConfig;

/// One metric value, keyed by scenario and per-horizon n (0 for
/// grid-independent metrics).
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub scenario_id: String,
    pub n: usize,
    pub metric: String,
    pub value: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub scenario_id: String,
    pub master_seed: u64,
    pub rows: Vec<ReportRow>,
    pub wall_time_s: f64,
}

impl ExperimentReport {
    pub fn metric(&self, name: &str, n: usize) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.metric == name && r.n == n)
    }

    pub fn metrics(&self, name: &str) -> Vec<&ReportRow> {
        self.rows.iter().filter(|r| r.metric == name).collect()
    }

    pub fn push(&mut self, n: usize, metric: &str, value: f64, std_error: f64) {
        self.rows.push(ReportRow {
            scenario_id: self.scenario_id.clone(),
            n,
            metric: metric.to_string(),
            value,
            std_error,
        });
    }

    /// Write `report_<scenario_id>.csv` plus a manifest, and return the
    /// written file paths.
    pub fn write(&self, config: &ExperimentConfig, out_dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(out_dir)
            .map_err(|e| ModelError::Domain(format!("cannot create {out_dir:?}: {e}")))?;
        let report_path = out_dir.join(format!("report_{}.csv", self.scenario_id));
        let mut wtr = csv::Writer::from_path(&report_path)
            .map_err(|e| ModelError::Domain(format!("cannot write report: {e}")))?;
        wtr.write_record(["scenario_id", "n", "metric", "value", "std_error"])
            .and_then(|_| {
                for row in &self.rows {
                    wtr.write_record(&[
                        row.scenario_id.clone(),
                        row.n.to_string(),
                        row.metric.clone(),
                        row.value.to_string(),
                        row.std_error.to_string(),
                    ])?;
                }
                wtr.flush().map_err(csv::Error::from)
            })
            .map_err(|e| ModelError::Domain(format!("report write failed: {e}")))?;

        let manifest_path = out_dir.join(format!("manifest_{}.json", self.scenario_id));
        let manifest = Manifest {
            scenario_id: self.scenario_id.clone(),
            master_seed: self.master_seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_s: self.wall_time_s,
            config: config.clone(),
            files: vec![FileEntry {
                name: report_path
                    .file_name()
                    .unwrap()
                    .to_string_lossy()
                    .into_owned(),
                sha256: sha256_of(&report_path)?,
            }],
        };
        let json = serde_json::to_string_pretty(&manifest)
            .map_err(|e| ModelError::Domain(format!("manifest serialization failed: {e}")))?;
        std::fs::write(&manifest_path, json)
            .map_err(|e| ModelError::Domain(format!("manifest write failed: {e}")))?;
        Ok(vec![report_path, manifest_path])
    }
}

#[derive(Debug, Serialize)]
struct Manifest {
    scenario_id: String,
    master_seed: u64,
    version: String,
    wall_time_s: f64,
    config: ExperimentConfig,
    files: Vec<FileEntry>,
}

#[derive(Debug, Serialize)]
struct FileEntry {
    name: String,
    sha256: String,
}

pub fn sha256_of(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path)
        .map_err(|e| ModelError::Domain(format!("cannot hash {path:?}: {e}")))?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(format!("{:x}", hasher.finalize()))
}

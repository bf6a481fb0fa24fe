//! Run configuration files (TOML) and config hashing.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::data::preprocess::PreprocessSpec;
use crate::error::{Error, Result};
use crate::protocol::{EngineConfig, ProtocolConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DatasetSource {
    Synthetic {
        features: usize,
        self_count: usize,
        nonself_count: usize,
        separation: f64,
        seed: u64,
    },
    Csv {
        path: PathBuf,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        preset: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        spec: Option<PreprocessSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfigFile {
    pub master_seed: u64,
    pub output_dir: PathBuf,
    pub dataset: DatasetSource,
    pub protocol: ProtocolConfig,
    #[serde(rename = "run")]
    pub runs: Vec<EngineConfig>,
}

impl RunConfigFile {
    pub fn validate(&self) -> Result<()> {
        if self.runs.is_empty() {
            return Err(Error::InvalidConfig("no [[run]] blocks configured".into()));
        }
        if let DatasetSource::Csv { preset, spec, .. } = &self.dataset {
            match (preset, spec) {
                (Some(_), Some(_)) => {
                    return Err(Error::InvalidConfig(
                        "dataset.csv: give either `preset` or `spec`, not both".into(),
                    ))
                }
                (None, None) => {
                    return Err(Error::InvalidConfig(
                        "dataset.csv: a `preset` name or an inline `spec` is required".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn resolve_preprocess_spec(&self) -> Result<Option<PreprocessSpec>> {
        match &self.dataset {
            DatasetSource::Synthetic { .. } => Ok(None),
            DatasetSource::Csv { preset, spec, .. } => match (preset, spec) {
                (Some(name), None) => PreprocessSpec::preset(name)
                    .map(Some)
                    .ok_or_else(|| Error::InvalidConfig(format!("unknown preset `{name}`"))),
                (None, Some(s)) => Ok(Some(s.clone())),
                _ => Err(Error::InvalidConfig("ambiguous dataset spec".into())),
            },
        }
    }
}

pub fn load_config(path: &Path) -> Result<RunConfigFile> {
    if !path.exists() {
        return Err(Error::FileNotFound(path.to_path_buf()));
    }
    let text = fs::read_to_string(path)?;
    let config: RunConfigFile =
        toml::from_str(&text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

/// Short hex digest of the canonical (JSON) form of any serializable config.
pub fn config_hash<T: Serialize>(value: &T) -> String {
    let canonical = serde_json::to_vec(value).expect("config is serializable");
    let digest = Sha256::digest(&canonical);
    let mut hex = String::with_capacity(16);
    for byte in &digest[..8] {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

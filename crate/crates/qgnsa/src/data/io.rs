//! Dataset layout on disk: `self.csv`, `nonself.csv`, and a JSON manifest
//! with feature names, row counts, and the originating config hash.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::data::preprocess::LabeledDataset;
use crate::detection::Sample;
use crate::error::{Error, Result};

pub const SELF_CSV: &str = "self.csv";
pub const NONSELF_CSV: &str = "nonself.csv";
pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub feature_names: Vec<String>,
    pub features: usize,
    pub self_rows: usize,
    pub nonself_rows: usize,
    pub config_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

fn write_samples(path: &Path, feature_names: &[String], samples: &[Sample], hash: &str) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!("# config_hash={hash}\n"));
    out.push_str(&feature_names.join(","));
    out.push('\n');
    for s in samples {
        let row: Vec<String> = s.values.iter().map(|v| format!("{v}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    let mut f = fs::File::create(path)?;
    f.write_all(out.as_bytes())?;
    Ok(())
}

/// Write the two-CSV + manifest layout into `dir` (created if absent).
pub fn write_dataset(
    dir: &Path,
    dataset: &LabeledDataset,
    config_hash: &str,
    warning: Option<String>,
) -> Result<DatasetManifest> {
    fs::create_dir_all(dir)?;
    write_samples(&dir.join(SELF_CSV), &dataset.feature_names, &dataset.self_samples, config_hash)?;
    write_samples(
        &dir.join(NONSELF_CSV),
        &dataset.feature_names,
        &dataset.nonself_samples,
        config_hash,
    )?;
    let manifest = DatasetManifest {
        feature_names: dataset.feature_names.clone(),
        features: dataset.feature_names.len(),
        self_rows: dataset.self_samples.len(),
        nonself_rows: dataset.nonself_samples.len(),
        config_hash: config_hash.to_string(),
        warning,
    };
    let json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::Report(e.to_string()))?;
    fs::write(dir.join(MANIFEST), json + "\n")?;
    Ok(manifest)
}

fn read_samples(path: &Path, nonself: bool, m: usize) -> Result<Vec<Sample>> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let _header = lines.next().ok_or(Error::EmptyCsv)?;
    let mut samples = Vec::new();
    for (row_no, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let values: Vec<f64> = line
            .split(',')
            .map(|cell| {
                cell.parse::<f64>().map_err(|_| Error::NonNumericCell {
                    column: "<dataset>".into(),
                    row: row_no + 1,
                    value: cell.to_string(),
                })
            })
            .collect::<Result<_>>()?;
        if values.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: values.len(),
            });
        }
        samples.push(if nonself {
            Sample::nonself(values)
        } else {
            Sample::self_class(values)
        });
    }
    Ok(samples)
}

/// Read a dataset previously written by [`write_dataset`].
pub fn read_dataset(dir: &Path) -> Result<(LabeledDataset, DatasetManifest)> {
    let manifest_text = fs::read_to_string(dir.join(MANIFEST))?;
    let manifest: DatasetManifest =
        serde_json::from_str(&manifest_text).map_err(|e| Error::Report(e.to_string()))?;
    let m = manifest.features;
    let dataset = LabeledDataset {
        feature_names: manifest.feature_names.clone(),
        self_samples: read_samples(&dir.join(SELF_CSV), false, m)?,
        nonself_samples: read_samples(&dir.join(NONSELF_CSV), true, m)?,
    };
    Ok((dataset, manifest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::synthetic::generate_synthetic;

    #[test]
    fn dataset_round_trips_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let ds = generate_synthetic(4, 30, 10, 0.4, 5).unwrap();
        let manifest = write_dataset(dir.path(), &ds, "abc123", None).unwrap();
        assert_eq!(manifest.self_rows, 30);
        assert_eq!(manifest.nonself_rows, 10);
        assert_eq!(manifest.features, 4);

        let (back, manifest2) = read_dataset(dir.path()).unwrap();
        assert_eq!(manifest, manifest2);
        assert_eq!(back.feature_names, ds.feature_names);
        assert_eq!(back.self_samples.len(), ds.self_samples.len());
        for (a, b) in back.nonself_samples.iter().zip(&ds.nonself_samples) {
            for (x, y) in a.values.iter().zip(&b.values) {
                assert!((x - y).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn warning_is_preserved() {
        let dir = tempfile::tempdir().unwrap();
        let ds = generate_synthetic(2, 5, 5, 0.0, 1).unwrap();
        write_dataset(dir.path(), &ds, "h", Some("separation is zero".into())).unwrap();
        let (_, manifest) = read_dataset(dir.path()).unwrap();
        assert_eq!(manifest.warning.as_deref(), Some("separation is zero"));
    }
}

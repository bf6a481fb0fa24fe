//! The preprocessing recipe: sort, drop, min-max normalize, one-hot encode,
//! then split rows into self and non-self sets by label.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::data::table::RawTable;
use crate::detection::{Label, Sample};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreprocessSpec {
    #[serde(default)]
    pub sort_column: Option<String>,
    #[serde(default)]
    pub drop_columns: Vec<String>,
    #[serde(default)]
    pub normalize_columns: Vec<String>,
    #[serde(default)]
    pub onehot_columns: Vec<String>,
    pub label_column: String,
    pub nonself_labels: BTreeSet<String>,
}

impl PreprocessSpec {
    /// Preset for the Metaverse financial-transactions CSV schema: drops
    /// identifier and leakage columns, normalizes the four numeric features,
    /// one-hot encodes the three categorical ones, and splits on the anomaly
    /// label (high risk = non-self). Yields 12 feature columns.
    pub fn metaverse() -> Self {
        Self {
            sort_column: Some("timestamp".into()),
            drop_columns: vec![
                "ip_prefix".into(),
                "sending_address".into(),
                "receiving_address".into(),
                "risk_score".into(),
                "transaction_type".into(),
            ],
            normalize_columns: vec![
                "amount".into(),
                "login_frequency".into(),
                "session_duration".into(),
                "hour_of_day".into(),
            ],
            onehot_columns: vec![
                "location_region".into(),
                "purchase_pattern".into(),
                "age_group".into(),
            ],
            label_column: "anomaly".into(),
            nonself_labels: ["high_risk".to_string()].into(),
        }
    }

    /// Look up a preset by name.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "metaverse" => Some(Self::metaverse()),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        let groups: [&[String]; 3] = [
            &self.drop_columns,
            &self.normalize_columns,
            &self.onehot_columns,
        ];
        let mut seen = BTreeSet::new();
        for group in groups {
            for col in group {
                if col == &self.label_column {
                    return Err(Error::InvalidConfig(format!(
                        "label column `{col}` also listed for transformation"
                    )));
                }
                if !seen.insert(col.clone()) {
                    return Err(Error::InvalidConfig(format!(
                        "column `{col}` listed in more than one transformation"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The processed dataset: normalized samples partitioned into self and
/// non-self sets, all values in [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    pub feature_names: Vec<String>,
    pub self_samples: Vec<Sample>,
    pub nonself_samples: Vec<Sample>,
}

impl LabeledDataset {
    pub fn m(&self) -> usize {
        self.feature_names.len()
    }
}

fn parse_cell(value: &str, column: &str, row: usize) -> Result<f64> {
    value.trim().parse::<f64>().map_err(|_| Error::NonNumericCell {
        column: column.to_string(),
        row,
        value: value.to_string(),
    })
}

pub fn preprocess(table: &RawTable, spec: &PreprocessSpec) -> Result<LabeledDataset> {
    spec.validate()?;

    let mut rows = table.rows.clone();

    // sort by the sort column (numeric when every cell parses), then drop it
    if let Some(sort_col) = &spec.sort_column {
        let idx = table.column_index(sort_col)?;
        let numeric: Option<Vec<f64>> = rows
            .iter()
            .map(|r| r[idx].trim().parse::<f64>().ok())
            .collect();
        match numeric {
            Some(keys) => {
                let mut order: Vec<usize> = (0..rows.len()).collect();
                order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]));
                rows = order.into_iter().map(|i| rows[i].clone()).collect();
            }
            None => rows.sort_by(|a, b| a[idx].cmp(&b[idx])),
        }
    }

    let label_idx = table.column_index(&spec.label_column)?;
    let mut dropped: BTreeSet<usize> = [label_idx].into();
    if let Some(sort_col) = &spec.sort_column {
        dropped.insert(table.column_index(sort_col)?);
    }
    for col in &spec.drop_columns {
        dropped.insert(table.column_index(col)?);
    }

    // min-max statistics over the full table, before splitting
    let mut norm_stats = Vec::new();
    for col in &spec.normalize_columns {
        let idx = table.column_index(col)?;
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for (row_no, row) in rows.iter().enumerate() {
            let v = parse_cell(&row[idx], col, row_no + 1)?;
            min = min.min(v);
            max = max.max(v);
        }
        norm_stats.push((idx, min, max));
    }

    // observed categories per one-hot column, ordered lexicographically
    let mut onehot_cats: Vec<(usize, Vec<String>)> = Vec::new();
    for col in &spec.onehot_columns {
        let idx = table.column_index(col)?;
        let cats: BTreeSet<String> = rows.iter().map(|r| r[idx].clone()).collect();
        onehot_cats.push((idx, cats.into_iter().collect()));
    }

    // assemble feature columns in original column order
    let mut feature_names = Vec::new();
    for (idx, name) in table.headers.iter().enumerate() {
        if dropped.contains(&idx) {
            continue;
        }
        if let Some((_, cats)) = onehot_cats.iter().find(|(i, _)| *i == idx) {
            for cat in cats {
                feature_names.push(format!("{name}={cat}"));
            }
        } else {
            feature_names.push(name.clone());
        }
    }

    let mut self_samples = Vec::new();
    let mut nonself_samples = Vec::new();
    for (row_no, row) in rows.iter().enumerate() {
        let mut values = Vec::with_capacity(feature_names.len());
        for (idx, name) in table.headers.iter().enumerate() {
            if dropped.contains(&idx) {
                continue;
            }
            if let Some((_, cats)) = onehot_cats.iter().find(|(i, _)| *i == idx) {
                for cat in cats {
                    values.push(if &row[idx] == cat { 1.0 } else { 0.0 });
                }
            } else if let Some(&(_, min, max)) =
                norm_stats.iter().find(|(i, _, _)| *i == idx)
            {
                let v = parse_cell(&row[idx], name, row_no + 1)?;
                values.push(if max > min { (v - min) / (max - min) } else { 0.0 });
            } else {
                // untransformed columns must already be numeric in [0, 1]
                let v = parse_cell(&row[idx], name, row_no + 1)?;
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidInput(format!(
                        "column `{name}` is neither dropped, normalized nor one-hot \
                         encoded, and row {} holds {v} outside [0, 1]",
                        row_no + 1
                    )));
                }
                values.push(v);
            }
        }
        if spec.nonself_labels.contains(&row[label_idx]) {
            nonself_samples.push(Sample::new(values, Label::NonSelf));
        } else {
            self_samples.push(Sample::new(values, Label::SelfClass));
        }
    }

    Ok(LabeledDataset {
        feature_names,
        self_samples,
        nonself_samples,
    })
}

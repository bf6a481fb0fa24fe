//! Distance matching and detector fitness.
//!
//! A detector matches a sample when their Euclidean distance is within the
//! threshold (inclusive). The quantum engine scores a single detector by the
//! fraction of training anomalies it matches; the classical engine scores a
//! detector set by its detection rate, optionally after censoring seeds that
//! match the self set.

use serde::{Deserialize, Serialize};

use crate::encoding::Detector;
use crate::error::{Error, Result};

/// Class of a dataset row: normal traffic (self) or anomaly (non-self).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    SelfClass,
    NonSelf,
}

/// One normalized dataset row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub values: Vec<f64>,
    pub label: Label,
}

impl Sample {
    pub fn new(values: Vec<f64>, label: Label) -> Self {
        Self { values, label }
    }

    pub fn self_class(values: Vec<f64>) -> Self {
        Self::new(values, Label::SelfClass)
    }

    pub fn nonself(values: Vec<f64>) -> Self {
        Self::new(values, Label::NonSelf)
    }
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}

/// Fitness of a single detector: the fraction of anomalies it matches.
///
/// A detector sitting exactly on a training anomaly scores zero, so copying
/// one training point is never an optimum.
pub fn quantum_fitness(
    detector: &Detector,
    anomalies: &[Sample],
    threshold: f64,
) -> Result<f64> {
    if anomalies.is_empty() {
        return Err(Error::InvalidInput("empty anomaly set".into()));
    }
    let mut matched = 0usize;
    for anomaly in anomalies {
        let d = euclidean_distance(detector.values(), &anomaly.values)?;
        if d == 0.0 {
            return Ok(0.0);
        }
        if d <= threshold {
            matched += 1;
        }
    }
    Ok(matched as f64 / anomalies.len() as f64)
}

/// Keep only the seeds whose distance to every self sample exceeds the
/// threshold (the maturation rule). Order preserved.
pub fn censor_seeds(
    seeds: &[Detector],
    self_set: &[Sample],
    threshold: f64,
) -> Result<Vec<Detector>> {
    let mut mature = Vec::with_capacity(seeds.len());
    for seed in seeds {
        let mut matches_self = false;
        for s in self_set {
            if euclidean_distance(seed.values(), &s.values)? <= threshold {
                matches_self = true;
                break;
            }
        }
        if !matches_self {
            mature.push(seed.clone());
        }
    }
    Ok(mature)
}

/// Detection rate of a detector set: the fraction of anomalies within the
/// threshold of at least one detector. Empty set detects nothing.
pub fn detection_rate(
    detectors: &[Detector],
    anomalies: &[Sample],
    threshold: f64,
) -> Result<f64> {
    if anomalies.is_empty() {
        return Err(Error::InvalidInput("empty anomaly set".into()));
    }
    if detectors.is_empty() {
        return Ok(0.0);
    }
    let mut covered = 0usize;
    for anomaly in anomalies {
        for det in detectors {
            if euclidean_distance(det.values(), &anomaly.values)? <= threshold {
                covered += 1;
                break;
            }
        }
    }
    Ok(covered as f64 / anomalies.len() as f64)
}

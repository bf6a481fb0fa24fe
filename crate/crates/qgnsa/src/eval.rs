//! Confusion matrices and the derived classification metrics.
//!
//! Non-self is the positive class: a test sample is predicted positive
//! when it lies within the threshold of at least one detector. Metrics with
//! a zero denominator are reported as undefined (`None`), never as zero.

use serde::{Deserialize, Serialize};

use crate::detection::{euclidean_distance, Label, Sample};
use crate::encoding::Detector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionMatrix {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }
}

/// The seven derived metrics; `None` marks an undefined (0/0) value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub fpr: Option<f64>,
    pub fnr: Option<f64>,
    pub accuracy: Option<f64>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
    pub specificity: Option<f64>,
}

pub const METRIC_NAMES: [&str; 7] = [
    "fpr",
    "fnr",
    "accuracy",
    "precision",
    "recall",
    "f1",
    "specificity",
];

impl MetricsReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        match name {
            "fpr" => self.fpr,
            "fnr" => self.fnr,
            "accuracy" => self.accuracy,
            "precision" => self.precision,
            "recall" => self.recall,
            "f1" => self.f1,
            "specificity" => self.specificity,
            _ => None,
        }
    }
}

/// Classify every test sample against the detector set and tally the counts.
pub fn classify(
    detectors: &[Detector],
    test: &[Sample],
    threshold: f64,
) -> Result<ConfusionMatrix> {
    if detectors.is_empty() {
        return Err(Error::InvalidInput("empty detector set".into()));
    }
    if threshold <= 0.0 {
        return Err(Error::InvalidInput("threshold must be positive".into()));
    }
    let mut cm = ConfusionMatrix::default();
    for sample in test {
        let mut predicted_nonself = false;
        for det in detectors {
            if euclidean_distance(det.values(), &sample.values)? <= threshold {
                predicted_nonself = true;
                break;
            }
        }
        match (predicted_nonself, sample.label) {
            (true, Label::NonSelf) => cm.tp += 1,
            (true, Label::SelfClass) => cm.fp += 1,
            (false, Label::SelfClass) => cm.tn += 1,
            (false, Label::NonSelf) => cm.fn_ += 1,
        }
    }
    Ok(cm)
}

fn ratio(num: u64, denom: u64) -> Option<f64> {
    (denom > 0).then(|| num as f64 / denom as f64)
}

/// Derive the seven metrics from a confusion matrix.
pub fn metrics(cm: &ConfusionMatrix) -> MetricsReport {
    let precision = ratio(cm.tp, cm.tp + cm.fp);
    let recall = ratio(cm.tp, cm.tp + cm.fn_);
    let f1 = match (precision, recall) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * r * p / (p + r)),
        _ => None,
    };
    MetricsReport {
        fpr: ratio(cm.fp, cm.fp + cm.tn),
        fnr: ratio(cm.fn_, cm.fn_ + cm.tp),
        accuracy: ratio(cm.tp + cm.tn, cm.total()),
        precision,
        recall,
        f1,
        specificity: ratio(cm.tn, cm.tn + cm.fp),
    }
}

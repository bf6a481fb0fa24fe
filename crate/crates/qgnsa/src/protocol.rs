//! The K-fold × repetition evaluation protocol.
//!
//! The non-self set is split into k folds; fold i's anomalies train a run
//! and the matching self fold (plus, by default, the held-out non-self
//! folds) form its test set. Each fold is repeated r times with distinct
//! derived seeds, giving k·r runs per algorithm. Fold assignment depends
//! only on the master seed, so the two algorithms see identical folds.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::folds::kfold_indices;
use crate::data::preprocess::LabeledDataset;
use crate::detection::Sample;
use crate::encoding::Detector;
use crate::engine::{run_evoseed, run_qgnsa, GaConfig, QgnsaConfig, RunTrace};
use crate::error::{Error, Result};
use crate::eval::{classify, metrics, ConfusionMatrix, MetricsReport, METRIC_NAMES};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "lowercase")]
pub enum EngineConfig {
    Quantum(QgnsaConfig),
    Classical(GaConfig),
}

impl EngineConfig {
    pub fn algorithm_name(&self) -> &'static str {
        match self {
            EngineConfig::Quantum(_) => "quantum",
            EngineConfig::Classical(_) => "classical",
        }
    }

    pub fn threshold(&self) -> f64 {
        match self {
            EngineConfig::Quantum(c) => c.threshold,
            EngineConfig::Classical(c) => c.threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub folds: usize,
    pub repetitions: usize,
    /// Test on non-self folds other than the training fold (default true).
    #[serde(default = "default_holdout")]
    pub holdout_nonself: bool,
}

fn default_holdout() -> bool {
    true
}

/// One (fold, repetition) result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub fold: usize,
    pub rep: usize,
    pub rng_seed: u64,
    pub confusion: ConfusionMatrix,
    pub metrics: MetricsReport,
    pub detector_count: usize,
    pub best_fitness: f64,
    pub terminated_early: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub mean: Option<f64>,
    pub stddev: Option<f64>,
    pub defined: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub algorithm: String,
    pub config_hash: String,
    pub master_seed: u64,
    pub runs: Vec<RunRecord>,
    pub summary: BTreeMap<String, MetricSummary>,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Seed for one (fold, rep) run, derived deterministically from the master.
pub fn derive_run_seed(master: u64, fold: usize, rep: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ fold as u64) ^ rep as u64)
}

const FOLD_STREAM_NONSELF: u64 = 0x464F4C44;
const FOLD_STREAM_SELF: u64 = 0x53454C46;

fn run_engine(
    engine: &EngineConfig,
    train_anomalies: &[Sample],
    train_self: &[Sample],
    seed: u64,
) -> Result<(Vec<Detector>, RunTrace)> {
    match engine {
        EngineConfig::Quantum(cfg) => {
            let mut cfg = cfg.clone();
            cfg.rng_seed = seed;
            let (best, trace) = run_qgnsa(train_anomalies, &cfg)?;
            Ok((vec![best.detector], trace))
        }
        EngineConfig::Classical(cfg) => {
            let mut cfg = cfg.clone();
            cfg.rng_seed = seed;
            run_evoseed(train_anomalies, train_self, &cfg)
        }
    }
}

/// Execute the full protocol for one algorithm.
pub fn run_protocol(
    dataset: &LabeledDataset,
    engine: &EngineConfig,
    protocol: &ProtocolConfig,
    master_seed: u64,
    config_hash: &str,
) -> Result<AggregateReport> {
    if protocol.repetitions == 0 {
        return Err(Error::InvalidConfig("repetitions must be positive".into()));
    }
    let k = protocol.folds;
    let nonself_folds = kfold_indices(
        dataset.nonself_samples.len(),
        k,
        splitmix64(master_seed ^ FOLD_STREAM_NONSELF),
    )?;
    let self_folds = kfold_indices(
        dataset.self_samples.len(),
        k,
        splitmix64(master_seed ^ FOLD_STREAM_SELF),
    )?;

    let jobs: Vec<(usize, usize)> = (0..k)
        .flat_map(|f| (0..protocol.repetitions).map(move |j| (f, j)))
        .collect();

    let runs: Vec<RunRecord> = jobs
        .into_par_iter()
        .map(|(fold, rep)| -> Result<RunRecord> {
            let seed = derive_run_seed(master_seed, fold, rep);

            let train_anomalies: Vec<Sample> = nonself_folds[fold]
                .iter()
                .map(|&i| dataset.nonself_samples[i].clone())
                .collect();
            let train_self: Vec<Sample> = self_folds
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != fold)
                .flat_map(|(_, idxs)| idxs.iter().map(|&i| dataset.self_samples[i].clone()))
                .collect();

            let mut test: Vec<Sample> = self_folds[fold]
                .iter()
                .map(|&i| dataset.self_samples[i].clone())
                .collect();
            if protocol.holdout_nonself {
                for (i, idxs) in nonself_folds.iter().enumerate() {
                    if i != fold {
                        test.extend(idxs.iter().map(|&j| dataset.nonself_samples[j].clone()));
                    }
                }
            } else {
                test.extend(
                    nonself_folds[fold]
                        .iter()
                        .map(|&i| dataset.nonself_samples[i].clone()),
                );
            }

            let (detectors, trace) = run_engine(engine, &train_anomalies, &train_self, seed)
                .map_err(|e| e.in_run(fold, rep))?;
            let confusion = classify(&detectors, &test, engine.threshold())
                .map_err(|e| e.in_run(fold, rep))?;
            let report = metrics(&confusion);
            let best_fitness = trace
                .generations
                .last()
                .map_or(0.0, |g| g.best_fitness);
            Ok(RunRecord {
                fold,
                rep,
                rng_seed: seed,
                confusion,
                metrics: report,
                detector_count: detectors.len(),
                best_fitness,
                terminated_early: trace.terminated_early,
            })
        })
        .collect::<Result<_>>()?;

    let summary = summarize(&runs);
    Ok(AggregateReport {
        algorithm: engine.algorithm_name().to_string(),
        config_hash: config_hash.to_string(),
        master_seed,
        runs,
        summary,
    })
}

/// Mean and sample standard deviation per metric, over defined values only.
pub fn summarize(runs: &[RunRecord]) -> BTreeMap<String, MetricSummary> {
    let mut summary = BTreeMap::new();
    for name in METRIC_NAMES {
        let values: Vec<f64> = runs.iter().filter_map(|r| r.metrics.get(name)).collect();
        let defined = values.len();
        let mean = (defined > 0).then(|| values.iter().sum::<f64>() / defined as f64);
        let stddev = (defined > 1).then(|| {
            let mu = mean.unwrap();
            (values.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / (defined - 1) as f64)
                .sqrt()
        });
        summary.insert(name.to_string(), MetricSummary { mean, stddev, defined });
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::synthetic::generate_synthetic;
    use crate::engine::DEFAULT_ADJ;

    fn quantum_engine() -> EngineConfig {
        EngineConfig::Quantum(QgnsaConfig {
            max_gen: 5,
            population_size: 5,
            precision: 4,
            threshold: 1.6,
            adj: DEFAULT_ADJ,
            rng_seed: 0,
        })
    }

    fn classical_engine() -> EngineConfig {
        EngineConfig::Classical(GaConfig {
            max_gen: 5,
            population_size: 5,
            seeds_per_individual: 1,
            threshold: 1.6,
            crossover_prob: 0.6,
            mutation_prob: 0.4,
            tournament_size: 2,
            self_censoring: false,
            rng_seed: 0,
        })
    }

    fn protocol(k: usize, r: usize) -> ProtocolConfig {
        ProtocolConfig {
            folds: k,
            repetitions: r,
            holdout_nonself: true,
        }
    }

    #[test]
    fn five_by_five_yields_25_runs_per_algorithm() {
        let ds = generate_synthetic(6, 200, 50, 1.0, 3).unwrap();
        for engine in [quantum_engine(), classical_engine()] {
            let report = run_protocol(&ds, &engine, &protocol(5, 5), 17, "h").unwrap();
            assert_eq!(report.runs.len(), 25);
        }
    }

    #[test]
    fn single_run_protocol() {
        let ds = generate_synthetic(4, 50, 10, 1.0, 3).unwrap();
        let report = run_protocol(&ds, &quantum_engine(), &protocol(1, 1), 9, "h").unwrap();
        assert_eq!(report.runs.len(), 1);
    }

    #[test]
    fn identical_master_seed_means_identical_report() {
        let ds = generate_synthetic(5, 100, 30, 0.8, 4).unwrap();
        let a = run_protocol(&ds, &classical_engine(), &protocol(3, 2), 5, "h").unwrap();
        let b = run_protocol(&ds, &classical_engine(), &protocol(3, 2), 5, "h").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn classify_totals_match_test_partition() {
        let ds = generate_synthetic(4, 60, 20, 0.8, 6).unwrap();
        let report = run_protocol(&ds, &quantum_engine(), &protocol(4, 1), 2, "h").unwrap();
        for run in &report.runs {
            // self fold sizes are 15, held-out nonself is 15 of 20
            assert_eq!(run.confusion.tn + run.confusion.fp, 15);
            assert_eq!(run.confusion.tp + run.confusion.fn_, 15);
        }
    }

    #[test]
    fn summary_skips_undefined_values() {
        let base = RunRecord {
            fold: 0,
            rep: 0,
            rng_seed: 0,
            confusion: ConfusionMatrix::default(),
            metrics: metrics(&ConfusionMatrix { tp: 0, fp: 0, tn: 3, fn_: 1 }),
            detector_count: 1,
            best_fitness: 0.0,
            terminated_early: false,
        };
        let summary = summarize(&[base]);
        assert_eq!(summary["precision"].defined, 0);
        assert_eq!(summary["precision"].mean, None);
        assert_eq!(summary["recall"].defined, 1);
        assert_eq!(summary["recall"].stddev, None);
    }
}

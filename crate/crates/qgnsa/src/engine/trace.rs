//! Per-generation observability shared by both engines.

use serde::{Deserialize, Serialize};

/// Fitness statistics for one generation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    /// Best fitness seen so far (non-decreasing across the trace).
    pub best_fitness: f64,
    pub min_fitness: f64,
    pub mean_fitness: f64,
    pub max_fitness: f64,
    /// Share of register angles at 0 or π; `None` for the classical engine.
    pub saturation: Option<f64>,
}

/// Record of one engine run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct RunTrace {
    pub generations: Vec<GenerationStats>,
    pub terminated_early: bool,
}

impl RunTrace {
    pub(crate) fn push(&mut self, stats: GenerationStats) {
        debug_assert!(self
            .generations
            .last()
            .map_or(true, |prev| stats.best_fitness >= prev.best_fitness));
        self.generations.push(stats);
    }

    pub fn best_fitness_series(&self) -> Vec<f64> {
        self.generations.iter().map(|g| g.best_fitness).collect()
    }
}

pub(crate) fn population_stats(fitnesses: &[f64]) -> (f64, f64, f64) {
    let min = fitnesses.iter().copied().fold(f64::INFINITY, f64::min);
    let max = fitnesses.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = fitnesses.iter().sum::<f64>() / fitnesses.len() as f64;
    (min, mean, max)
}

//! The quantum detector-generation loop.
//!
//! Each generation measures the register `population_size` times, decodes
//! every outcome into a candidate detector, scores it against the training
//! anomalies, and tracks the best candidate. A perfect score terminates the
//! run; a best score of zero resets the register to equal superposition;
//! otherwise the angles are steered toward the best candidate's bits.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::detection::{quantum_fitness, Sample};
use crate::encoding::{decode, Detector, QubitLayout};
use crate::engine::trace::{population_stats, GenerationStats, RunTrace};
use crate::error::{Error, Result};
use crate::quantum::{AngleRegister, Bitstring};

/// Default angle-adjustment coefficient: 0.05·π radians per generation.
pub const DEFAULT_ADJ: f64 = 0.05 * PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QgnsaConfig {
    pub max_gen: usize,
    pub population_size: usize,
    pub precision: usize,
    pub threshold: f64,
    #[serde(default = "default_adj")]
    pub adj: f64,
    /// Overridden per run by the protocol driver.
    #[serde(default)]
    pub rng_seed: u64,
}

fn default_adj() -> f64 {
    DEFAULT_ADJ
}

impl QgnsaConfig {
    fn validate(&self) -> Result<()> {
        if self.max_gen == 0 || self.population_size == 0 || self.precision == 0 {
            return Err(Error::InvalidConfig(
                "max_gen, population_size and precision must be positive".into(),
            ));
        }
        if self.threshold <= 0.0 {
            return Err(Error::InvalidConfig("threshold must be positive".into()));
        }
        if self.adj <= 0.0 || self.adj > PI {
            return Err(Error::InvalidConfig("adj must be in (0, π]".into()));
        }
        Ok(())
    }
}

/// The best detector found so far, with the bits it decoded from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestCandidate {
    pub detector: Detector,
    pub bits: Bitstring,
    pub fitness: f64,
    pub generation_found: usize,
}

/// Run the full loop and return the best candidate plus its trace.
pub fn run_qgnsa(
    train_anomalies: &[Sample],
    config: &QgnsaConfig,
) -> Result<(BestCandidate, RunTrace)> {
    config.validate()?;
    if train_anomalies.is_empty() {
        return Err(Error::InvalidInput("empty training anomaly set".into()));
    }
    let m = train_anomalies[0].values.len();
    if m == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    if let Some(bad) = train_anomalies.iter().find(|s| s.values.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: bad.values.len(),
        });
    }

    let layout = QubitLayout::new(m, config.precision)?;
    let mut register = AngleRegister::new(layout.n())?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);

    let mut best: Option<BestCandidate> = None;
    let mut trace = RunTrace::default();

    for generation in 0..config.max_gen {
        let outcomes = register.sample(config.population_size, &mut rng);
        let mut fitnesses = Vec::with_capacity(outcomes.len());
        for bits in outcomes {
            let detector = decode(&bits, &layout)?;
            let fitness = quantum_fitness(&detector, train_anomalies, config.threshold)?;
            fitnesses.push(fitness);
            // first candidate of the first generation seeds the best;
            // afterwards only strict improvement replaces it
            let improves = best.as_ref().map_or(true, |b| fitness > b.fitness);
            if improves {
                best = Some(BestCandidate {
                    detector,
                    bits,
                    fitness,
                    generation_found: generation,
                });
            }
        }

        let incumbent = best.as_ref().expect("population is non-empty");
        let (min, mean, max) = population_stats(&fitnesses);
        trace.push(GenerationStats {
            generation,
            best_fitness: incumbent.fitness,
            min_fitness: min,
            mean_fitness: mean,
            max_fitness: max,
            saturation: Some(register.saturation_fraction()),
        });

        if incumbent.fitness == 1.0 {
            trace.terminated_early = true;
            return Ok((best.unwrap(), trace));
        } else if incumbent.fitness == 0.0 {
            register = register.reset_to_superposition();
        } else {
            register = register.adjust(&incumbent.bits, config.adj)?;
        }
    }

    Ok((best.expect("max_gen >= 1"), trace))
}

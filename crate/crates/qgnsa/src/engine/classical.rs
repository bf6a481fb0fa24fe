//! The classical evolutionary baseline.
//!
//! Individuals carry K seed vectors; fitness is the detection rate of the
//! (optionally self-censored) seed set against the training anomalies. Each
//! generation applies tournament selection, per-position crossover over
//! consecutive pairs, per-position mutation, re-evaluation, and elitist
//! replacement of the worst new individual when the previous best was
//! strictly fitter.

use rand::seq::index::sample as index_sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::detection::{censor_seeds, detection_rate, Sample};
use crate::encoding::Detector;
use crate::engine::trace::{population_stats, GenerationStats, RunTrace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub max_gen: usize,
    pub population_size: usize,
    #[serde(default = "default_seeds_per_individual")]
    pub seeds_per_individual: usize,
    pub threshold: f64,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    #[serde(default = "default_tournament_size")]
    pub tournament_size: usize,
    #[serde(default)]
    pub self_censoring: bool,
    /// Overridden per run by the protocol driver.
    #[serde(default)]
    pub rng_seed: u64,
}

fn default_seeds_per_individual() -> usize {
    1
}

fn default_tournament_size() -> usize {
    2
}

impl GaConfig {
    fn validate(&self) -> Result<()> {
        if self.population_size == 0 || self.seeds_per_individual == 0 {
            return Err(Error::InvalidConfig(
                "population_size and seeds_per_individual must be positive".into(),
            ));
        }
        if self.threshold <= 0.0 {
            return Err(Error::InvalidConfig("threshold must be positive".into()));
        }
        for (name, p) in [
            ("crossover_prob", self.crossover_prob),
            ("mutation_prob", self.mutation_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} must be in [0, 1]")));
            }
        }
        if self.tournament_size == 0 || self.tournament_size > self.population_size {
            return Err(Error::InvalidConfig(
                "tournament_size must be in 1..=population_size".into(),
            ));
        }
        Ok(())
    }
}

/// One GA individual: K seed vectors plus its last evaluated fitness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub seeds: Vec<Detector>,
    pub fitness: f64,
}

/// Draw `size` distinct individuals uniformly and return the fittest
/// (ties go to the first drawn).
pub fn tournament_select<R: Rng + ?Sized>(
    population: &[Individual],
    size: usize,
    rng: &mut R,
) -> Result<Individual> {
    if population.is_empty() {
        return Err(Error::InvalidInput("empty population".into()));
    }
    if size == 0 || size > population.len() {
        return Err(Error::InvalidInput(
            "tournament size must be in 1..=population size".into(),
        ));
    }
    let drawn = index_sample(rng, population.len(), size);
    let mut winner = drawn.index(0);
    for idx in drawn.iter().skip(1) {
        if population[idx].fitness > population[winner].fitness {
            winner = idx;
        }
    }
    Ok(population[winner].clone())
}

/// Swap each seed position between the pair independently with probability `prob`.
pub fn crossover<R: Rng + ?Sized>(
    a: &Individual,
    b: &Individual,
    prob: f64,
    rng: &mut R,
) -> Result<(Individual, Individual)> {
    if a.seeds.len() != b.seeds.len() {
        return Err(Error::DimensionMismatch {
            expected: a.seeds.len(),
            got: b.seeds.len(),
        });
    }
    let mut left = a.clone();
    let mut right = b.clone();
    for k in 0..left.seeds.len() {
        if rng.gen::<f64>() < prob {
            std::mem::swap(&mut left.seeds[k], &mut right.seeds[k]);
        }
    }
    Ok((left, right))
}

/// Replace each seed independently with probability `prob` by a fresh
/// uniform random vector in [0,1]^M.
pub fn mutate<R: Rng + ?Sized>(ind: &Individual, prob: f64, rng: &mut R) -> Individual {
    let mut out = ind.clone();
    for seed in &mut out.seeds {
        if rng.gen::<f64>() < prob {
            let m = seed.len();
            *seed = Detector::new((0..m).map(|_| rng.gen::<f64>()).collect());
        }
    }
    out
}

fn evaluate(
    ind: &Individual,
    train_anomalies: &[Sample],
    train_self: &[Sample],
    config: &GaConfig,
) -> Result<f64> {
    let active: Vec<Detector> = if config.self_censoring {
        censor_seeds(&ind.seeds, train_self, config.threshold)?
    } else {
        ind.seeds.clone()
    };
    detection_rate(&active, train_anomalies, config.threshold)
}

/// Run the full evolutionary loop; returns the best individual's mature
/// detector set and the run trace.
pub fn run_evoseed(
    train_anomalies: &[Sample],
    train_self: &[Sample],
    config: &GaConfig,
) -> Result<(Vec<Detector>, RunTrace)> {
    config.validate()?;
    if train_anomalies.is_empty() {
        return Err(Error::InvalidInput("empty training anomaly set".into()));
    }
    let m = train_anomalies[0].values.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);

    let mut population: Vec<Individual> = (0..config.population_size)
        .map(|_| Individual {
            seeds: (0..config.seeds_per_individual)
                .map(|_| Detector::new((0..m).map(|_| rng.gen::<f64>()).collect()))
                .collect(),
            fitness: 0.0,
        })
        .collect();
    for ind in &mut population {
        ind.fitness = evaluate(ind, train_anomalies, train_self, config)?;
    }

    let mut trace = RunTrace::default();
    let record = |population: &[Individual], generation: usize, trace: &mut RunTrace| {
        let fitnesses: Vec<f64> = population.iter().map(|i| i.fitness).collect();
        let (min, mean, max) = population_stats(&fitnesses);
        trace.push(GenerationStats {
            generation,
            best_fitness: max,
            min_fitness: min,
            mean_fitness: mean,
            max_fitness: max,
            saturation: None,
        });
    };
    record(&population, 0, &mut trace);

    for t in 0..config.max_gen {
        let prev_best = population
            .iter()
            .max_by(|a, b| a.fitness.total_cmp(&b.fitness))
            .cloned()
            .expect("population is non-empty");

        let mut intermediate: Vec<Individual> = (0..config.population_size)
            .map(|_| tournament_select(&population, config.tournament_size, &mut rng))
            .collect::<Result<_>>()?;

        for pair in intermediate.chunks_mut(2) {
            if let [a, b] = pair {
                let (na, nb) = crossover(a, b, config.crossover_prob, &mut rng)?;
                *a = na;
                *b = nb;
            }
        }

        for ind in &mut intermediate {
            *ind = mutate(ind, config.mutation_prob, &mut rng);
        }

        for ind in &mut intermediate {
            ind.fitness = evaluate(ind, train_anomalies, train_self, config)?;
        }

        let new_best = intermediate
            .iter()
            .map(|i| i.fitness)
            .fold(f64::NEG_INFINITY, f64::max);
        if prev_best.fitness > new_best {
            let worst = intermediate
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| a.fitness.total_cmp(&b.fitness))
                .map(|(i, _)| i)
                .expect("population is non-empty");
            intermediate[worst] = prev_best;
        }

        population = intermediate;
        record(&population, t + 1, &mut trace);
    }

    let best = population
        .into_iter()
        .max_by(|a, b| a.fitness.total_cmp(&b.fitness))
        .expect("population is non-empty");
    let detectors = if config.self_censoring {
        censor_seeds(&best.seeds, train_self, config.threshold)?
    } else {
        best.seeds
    };
    Ok((detectors, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn config(seed: u64) -> GaConfig {
        GaConfig {
            max_gen: 10,
            population_size: 10,
            seeds_per_individual: 1,
            threshold: 1.6,
            crossover_prob: 0.6,
            mutation_prob: 0.4,
            tournament_size: 2,
            self_censoring: false,
            rng_seed: seed,
        }
    }

    fn ind(fitness: f64, seeds: &[&[f64]]) -> Individual {
        Individual {
            seeds: seeds.iter().map(|s| Detector::new(s.to_vec())).collect(),
            fitness,
        }
    }

    #[test]
    fn full_tournament_returns_global_best() {
        let pop = vec![
            ind(0.2, &[&[0.1]]),
            ind(0.9, &[&[0.5]]),
            ind(0.5, &[&[0.9]]),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let winner = tournament_select(&pop, 3, &mut rng).unwrap();
        assert_eq!(winner.fitness, 0.9);
    }

    #[test]
    fn tournament_of_one_is_uniform_draw() {
        let pop = vec![ind(0.2, &[&[0.1]]), ind(0.9, &[&[0.5]])];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut seen = [false; 2];
        for _ in 0..50 {
            let w = tournament_select(&pop, 1, &mut rng).unwrap();
            seen[if w.fitness == 0.2 { 0 } else { 1 }] = true;
        }
        assert!(seen[0] && seen[1]);
    }

    #[test]
    fn crossover_extremes() {
        let a = ind(0.0, &[&[0.1], &[0.2], &[0.3]]);
        let b = ind(0.0, &[&[0.7], &[0.8], &[0.9]]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (x, y) = crossover(&a, &b, 0.0, &mut rng).unwrap();
        assert_eq!(x.seeds, a.seeds);
        assert_eq!(y.seeds, b.seeds);
        let (x, y) = crossover(&a, &b, 1.0, &mut rng).unwrap();
        assert_eq!(x.seeds, b.seeds);
        assert_eq!(y.seeds, a.seeds);
    }

    #[test]
    fn mutation_extremes() {
        let a = ind(0.0, &[&[0.1, 0.2], &[0.3, 0.4]]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let same = mutate(&a, 0.0, &mut rng);
        assert_eq!(same.seeds, a.seeds);
        let fresh = mutate(&a, 1.0, &mut rng);
        assert_ne!(fresh.seeds, a.seeds);
        for seed in &fresh.seeds {
            assert!(seed.values().iter().all(|v| (0.0..=1.0).contains(v)));
        }
    }

    #[test]
    fn single_trivial_anomaly_solved_at_generation_zero() {
        let anomalies = vec![Sample::nonself(vec![0.5, 0.5])];
        let mut cfg = config(5);
        cfg.threshold = 2.0; // >= sqrt(M)
        cfg.max_gen = 1;
        let (_, trace) = run_evoseed(&anomalies, &[], &cfg).unwrap();
        assert_eq!(trace.generations[0].best_fitness, 1.0);
    }

    #[test]
    fn zero_generations_returns_best_of_initial_population() {
        let anomalies = vec![Sample::nonself(vec![0.5, 0.5])];
        let mut cfg = config(9);
        cfg.max_gen = 0;
        let (detectors, trace) = run_evoseed(&anomalies, &[], &cfg).unwrap();
        assert_eq!(detectors.len(), 1);
        assert_eq!(trace.generations.len(), 1);
    }

    #[test]
    fn elitism_keeps_best_fitness_non_decreasing() {
        let anomalies: Vec<Sample> = (0..8)
            .map(|i| Sample::nonself(vec![0.1 * i as f64, 1.0 - 0.1 * i as f64]))
            .collect();
        for seed in 0..10 {
            let mut cfg = config(seed);
            cfg.threshold = 0.3;
            let (_, trace) = run_evoseed(&anomalies, &[], &cfg).unwrap();
            let series = trace.best_fitness_series();
            assert!(series.windows(2).all(|w| w[1] >= w[0]), "seed {seed}: {series:?}");
        }
    }

    #[test]
    fn runs_are_reproducible() {
        let anomalies = vec![
            Sample::nonself(vec![0.2, 0.4]),
            Sample::nonself(vec![0.8, 0.1]),
        ];
        let cfg = config(11);
        let a = run_evoseed(&anomalies, &[], &cfg).unwrap();
        let b = run_evoseed(&anomalies, &[], &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn censoring_removes_self_matching_seeds_from_output() {
        let anomalies = vec![Sample::nonself(vec![0.9, 0.9])];
        let self_set = vec![Sample::self_class(vec![0.1, 0.1])];
        let mut cfg = config(13);
        cfg.self_censoring = true;
        cfg.threshold = 0.4;
        let (detectors, _) = run_evoseed(&anomalies, &self_set, &cfg).unwrap();
        for d in &detectors {
            let dist = crate::detection::euclidean_distance(d.values(), &self_set[0].values).unwrap();
            assert!(dist > cfg.threshold);
        }
    }

    proptest! {
        #[test]
        fn crossover_conserves_the_seed_multiset(
            seeds_a in proptest::collection::vec(proptest::collection::vec(0.0f64..1.0, 2), 1..6),
            prob in 0.0f64..=1.0,
            seed in any::<u64>(),
        ) {
            let k = seeds_a.len();
            let a = Individual {
                seeds: seeds_a.iter().map(|s| Detector::new(s.clone())).collect(),
                fitness: 0.0,
            };
            let b = Individual {
                seeds: (0..k).map(|i| Detector::new(vec![i as f64 / k as f64; 2])).collect(),
                fitness: 0.0,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y) = crossover(&a, &b, prob, &mut rng).unwrap();
            for i in 0..k {
                let before = (&a.seeds[i], &b.seeds[i]);
                let after = (&x.seeds[i], &y.seeds[i]);
                prop_assert!(after == before || after == (before.1, before.0));
            }
        }
    }
}

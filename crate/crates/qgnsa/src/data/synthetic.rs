//! Seeded synthetic dataset generator: a cluster mixture for the self set
//! and displaced clusters for the non-self set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::data::preprocess::LabeledDataset;
use crate::detection::Sample;
use crate::error::{Error, Result};

const CLUSTERS: usize = 3;
const NOISE_SIGMA: f64 = 0.05;

/// Generate a labeled dataset in [0,1]^m. Self samples come from a mixture
/// of clusters; non-self samples come from the same clusters displaced by
/// `separation` along a random direction (clipped to the unit cube).
/// `separation = 0` makes the two distributions identical.
pub fn generate_synthetic(
    m: usize,
    n_self: usize,
    n_nonself: usize,
    separation: f64,
    rng_seed: u64,
) -> Result<LabeledDataset> {
    if m == 0 || n_self == 0 || n_nonself == 0 {
        return Err(Error::InvalidSize);
    }
    if separation < 0.0 {
        return Err(Error::InvalidInput("separation must be non-negative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);

    let self_centers: Vec<Vec<f64>> = (0..CLUSTERS)
        .map(|_| (0..m).map(|_| rng.gen_range(0.2..0.8)).collect())
        .collect();
    let nonself_centers: Vec<Vec<f64>> = self_centers
        .iter()
        .map(|c| {
            let dir: Vec<f64> = (0..m)
                .map(|_| <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng))
                .collect();
            let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
            c.iter()
                .zip(&dir)
                .map(|(ci, di)| (ci + separation * di / norm).clamp(0.0, 1.0))
                .collect()
        })
        .collect();

    let draw = |centers: &[Vec<f64>], rng: &mut ChaCha8Rng| -> Vec<f64> {
        let c = &centers[rng.gen_range(0..CLUSTERS)];
        c.iter()
            .map(|&ci| {
                let noise: f64 =
                    <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng);
                (ci + NOISE_SIGMA * noise).clamp(0.0, 1.0)
            })
            .collect()
    };

    let self_samples = (0..n_self)
        .map(|_| Sample::self_class(draw(&self_centers, &mut rng)))
        .collect();
    let nonself_samples = (0..n_nonself)
        .map(|_| Sample::nonself(draw(&nonself_centers, &mut rng)))
        .collect();

    Ok(LabeledDataset {
        feature_names: (0..m).map(|j| format!("f{j}")).collect(),
        self_samples,
        nonself_samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::{detection_rate, quantum_fitness};
    use crate::encoding::Detector;

    #[test]
    fn counts_and_bounds_respected() {
        let ds = generate_synthetic(5, 100, 40, 0.5, 1).unwrap();
        assert_eq!(ds.self_samples.len(), 100);
        assert_eq!(ds.nonself_samples.len(), 40);
        assert_eq!(ds.m(), 5);
        for s in ds.self_samples.iter().chain(&ds.nonself_samples) {
            assert!(s.values.iter().all(|v| (0.0..=1.0).contains(v)));
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate_synthetic(4, 50, 20, 0.3, 7).unwrap();
        let b = generate_synthetic(4, 50, 20, 0.3, 7).unwrap();
        assert_eq!(a, b);
        let c = generate_synthetic(4, 50, 20, 0.3, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn negative_separation_rejected() {
        assert!(generate_synthetic(4, 10, 10, -0.1, 0).is_err());
    }

    #[test]
    fn large_separation_admits_a_full_coverage_detector() {
        // verify with the coverage oracle that a single detector can reach
        // fitness close to 1 at the stringent threshold
        let ds = generate_synthetic(12, 2000, 500, 1.5, 11).unwrap();
        let mean: Vec<f64> = (0..12)
            .map(|j| {
                ds.nonself_samples.iter().map(|s| s.values[j]).sum::<f64>()
                    / ds.nonself_samples.len() as f64
            })
            .collect();
        let det = Detector::new(mean);
        let f = quantum_fitness(&det, &ds.nonself_samples, 1.6).unwrap();
        assert!(f > 0.95, "fitness {f}");
        let dr = detection_rate(std::slice::from_ref(&det), &ds.nonself_samples, 1.6).unwrap();
        assert!(dr > 0.95, "detection rate {dr}");
    }
}

//! Exact product-state simulation of the detector-generation circuit.
//!
//! The circuit applies one Y-rotation per qubit and measures; there are no
//! entangling gates, so each qubit is an independent Bernoulli trial with
//! P(1) = sin²(θ/2). Sampling per qubit is therefore distribution-identical
//! to a full state-vector simulation, at any register size.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One full-circuit measurement outcome.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bitstring {
    bits: Vec<bool>,
}

impl Bitstring {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Render as a 0/1 string, qubit 0 first.
    pub fn to_binary_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// The evolving register of per-qubit Y-rotation angles.
///
/// Every angle stays in [0, π]. θ = π/2 is the equal superposition
/// (P(1) = 1/2); θ = 0 and θ = π are the collapsed endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleRegister {
    angles: Vec<f64>,
}

impl AngleRegister {
    /// A register of `n` qubits in equal superposition (all angles π/2).
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize);
        }
        Ok(Self {
            angles: vec![FRAC_PI_2; n],
        })
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Probability of measuring 1 on qubit `i`.
    pub fn prob_one(&self, i: usize) -> f64 {
        (self.angles[i] / 2.0).sin().powi(2)
    }

    /// Measure the full circuit `shots` times. Bit i of each outcome is 1
    /// with probability sin²(θ_i/2), independently per qubit and per shot.
    pub fn sample<R: Rng + ?Sized>(&self, shots: usize, rng: &mut R) -> Vec<Bitstring> {
        let probs: Vec<f64> = (0..self.angles.len()).map(|i| self.prob_one(i)).collect();
        (0..shots)
            .map(|_| {
                Bitstring::new(probs.iter().map(|&p| rng.gen::<f64>() < p).collect())
            })
            .collect()
    }

    /// Steer angles toward the given bitstring: θ += adj where the bit is 1
    /// (capped at π), θ -= adj where it is 0 (floored at 0).
    pub fn adjust(&self, best: &Bitstring, adj: f64) -> Result<AngleRegister> {
        if best.len() != self.angles.len() {
            return Err(Error::DimensionMismatch {
                expected: self.angles.len(),
                got: best.len(),
            });
        }
        let angles = self
            .angles
            .iter()
            .zip(best.bits())
            .map(|(&theta, &bit)| {
                if bit {
                    (theta + adj).min(PI)
                } else {
                    (theta - adj).max(0.0)
                }
            })
            .collect();
        Ok(AngleRegister { angles })
    }

    /// Back to equal superposition, length preserved.
    pub fn reset_to_superposition(&self) -> AngleRegister {
        AngleRegister {
            angles: vec![FRAC_PI_2; self.angles.len()],
        }
    }

    /// Share of angles at an endpoint (0 or π), i.e. measuring deterministically.
    pub fn saturation_fraction(&self) -> f64 {
        let saturated = self
            .angles
            .iter()
            .filter(|&&theta| theta == 0.0 || theta == PI)
            .count();
        saturated as f64 / self.angles.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn new_register_is_equal_superposition() {
        let reg = AngleRegister::new(4).unwrap();
        assert_eq!(reg.angles(), &[FRAC_PI_2; 4]);
        let reg = AngleRegister::new(1).unwrap();
        assert_eq!(reg.angles(), &[FRAC_PI_2]);
        let reg = AngleRegister::new(192).unwrap();
        assert_eq!(reg.len(), 192);
        assert!(reg.angles().iter().all(|&a| a == FRAC_PI_2));
    }

    #[test]
    fn zero_size_register_rejected() {
        assert!(matches!(AngleRegister::new(0), Err(Error::InvalidSize)));
    }

    #[test]
    fn endpoint_angles_sample_deterministically() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let zeros = AngleRegister { angles: vec![0.0; 5] };
        for bs in zeros.sample(100, &mut rng) {
            assert!(bs.bits().iter().all(|&b| !b));
        }
        let ones = AngleRegister { angles: vec![PI; 5] };
        for bs in ones.sample(100, &mut rng) {
            assert!(bs.bits().iter().all(|&b| b));
        }
    }

    #[test]
    fn superposition_frequency_near_half() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let reg = AngleRegister::new(1).unwrap();
        let samples = reg.sample(10_000, &mut rng);
        let ones = samples.iter().filter(|bs| bs.bits()[0]).count();
        let freq = ones as f64 / 10_000.0;
        assert!((freq - 0.5).abs() < 0.02, "freq = {freq}");
    }

    #[test]
    fn adjust_moves_and_clamps() {
        let reg = AngleRegister::new(1).unwrap();
        let up = reg.adjust(&Bitstring::new(vec![true]), 0.1).unwrap();
        assert!((up.angles()[0] - (FRAC_PI_2 + 0.1)).abs() < 1e-12);

        let near_pi = AngleRegister { angles: vec![PI - 0.05] };
        let capped = near_pi.adjust(&Bitstring::new(vec![true]), 0.1).unwrap();
        assert_eq!(capped.angles()[0], PI);

        let near_zero = AngleRegister { angles: vec![0.02] };
        let floored = near_zero.adjust(&Bitstring::new(vec![false]), 0.1).unwrap();
        assert_eq!(floored.angles()[0], 0.0);
    }

    #[test]
    fn adjust_length_mismatch_is_error() {
        let reg = AngleRegister::new(3).unwrap();
        let err = reg.adjust(&Bitstring::new(vec![true; 2]), 0.1);
        assert!(matches!(err, Err(Error::DimensionMismatch { expected: 3, got: 2 })));
    }

    #[test]
    fn reset_restores_superposition() {
        let reg = AngleRegister { angles: vec![0.0, PI, 0.3] };
        assert_eq!(reg.reset_to_superposition().angles(), &[FRAC_PI_2; 3]);
        let uniform = AngleRegister::new(192).unwrap();
        assert_eq!(uniform.reset_to_superposition(), uniform);
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let reg = AngleRegister::new(8).unwrap();
        let a = reg.sample(20, &mut ChaCha8Rng::seed_from_u64(99));
        let b = reg.sample(20, &mut ChaCha8Rng::seed_from_u64(99));
        assert_eq!(a, b);
    }

    #[test]
    fn repeated_adjust_saturates_and_collapses() {
        let adj = 0.05 * PI;
        let target = Bitstring::new(vec![true, false, true, false]);
        let mut reg = AngleRegister::new(4).unwrap();
        let max_steps = (FRAC_PI_2 / adj).ceil() as usize;
        for _ in 0..max_steps {
            reg = reg.adjust(&target, adj).unwrap();
        }
        assert_eq!(reg.saturation_fraction(), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for bs in reg.sample(100, &mut rng) {
            assert_eq!(bs, target);
        }
    }

    proptest! {
        #[test]
        fn angles_stay_clamped_under_any_adjust_sequence(
            n in 1usize..16,
            steps in proptest::collection::vec((any::<u64>(), 0.0f64..2.0), 0..40),
        ) {
            let mut reg = AngleRegister::new(n).unwrap();
            for (bits_seed, adj) in steps {
                prop_assume!(adj > 0.0);
                let bits = Bitstring::new((0..n).map(|i| (bits_seed >> (i % 64)) & 1 == 1).collect());
                reg = reg.adjust(&bits, adj).unwrap();
                for &theta in reg.angles() {
                    prop_assert!((0.0..=PI).contains(&theta));
                }
            }
        }
    }
}

//! Shuffled K-fold partitioning with its own seeded stream, so fold
//! assignment stays stable across engine changes.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::detection::Sample;
use crate::error::{Error, Result};

/// Partition `len` indices into k shuffled folds with sizes differing by
/// at most one.
pub fn kfold_indices(len: usize, k: usize, rng_seed: u64) -> Result<Vec<Vec<usize>>> {
    if k == 0 || k > len {
        return Err(Error::InvalidInput(format!(
            "k must be in 1..={len}, got {k}"
        )));
    }
    let mut indices: Vec<usize> = (0..len).collect();
    indices.shuffle(&mut ChaCha8Rng::seed_from_u64(rng_seed));

    let base = len / k;
    let remainder = len % k;
    let mut folds = Vec::with_capacity(k);
    let mut start = 0;
    for f in 0..k {
        let size = base + usize::from(f < remainder);
        folds.push(indices[start..start + size].to_vec());
        start += size;
    }
    Ok(folds)
}

/// Partition samples into k shuffled folds.
pub fn kfold_split(samples: &[Sample], k: usize, rng_seed: u64) -> Result<Vec<Vec<Sample>>> {
    let folds = kfold_indices(samples.len(), k, rng_seed)?;
    Ok(folds
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| samples[i].clone()).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn paper_scale_folds_are_balanced() {
        let folds = kfold_indices(6495, 5, 0).unwrap();
        assert!(folds.iter().all(|f| f.len() == 1299));
    }

    #[test]
    fn remainder_spread_over_leading_folds() {
        let folds = kfold_indices(10, 3, 1).unwrap();
        let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![4, 3, 3]);
    }

    #[test]
    fn single_fold_is_whole_input() {
        let samples: Vec<Sample> = (0..4).map(|i| Sample::nonself(vec![i as f64])).collect();
        let folds = kfold_split(&samples, 1, 2).unwrap();
        assert_eq!(folds.len(), 1);
        assert_eq!(folds[0].len(), 4);
    }

    #[test]
    fn oversized_k_is_error() {
        assert!(kfold_indices(3, 4, 0).is_err());
        assert!(kfold_indices(3, 0, 0).is_err());
    }

    proptest! {
        #[test]
        fn folds_partition_the_input(len in 1usize..200, k_frac in 0.0f64..1.0, seed in any::<u64>()) {
            let k = 1 + ((len - 1) as f64 * k_frac) as usize;
            let folds = kfold_indices(len, k, seed).unwrap();
            let mut all: Vec<usize> = folds.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..len).collect::<Vec<_>>());
            let max = folds.iter().map(Vec::len).max().unwrap();
            let min = folds.iter().map(Vec::len).min().unwrap();
            prop_assert!(max - min <= 1);
        }
    }
}

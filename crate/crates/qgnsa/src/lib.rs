//! Quantum-inspired genetic negative selection for anomaly detection.
//!
//! This crate builds real-valued anomaly detectors two ways: a
//! quantum-inspired engine that evolves a register of per-qubit rotation
//! angles and samples candidate detectors from it, and a classical
//! evolutionary baseline over seed vectors. Around the engines sit a
//! dataset preprocessing pipeline, a K-fold evaluation protocol with
//! confusion-matrix metrics, and a config-driven CLI.
//!
//! The quantum circuit applies only per-qubit Y-rotations before
//! measurement, so the simulator samples each qubit as an independent
//! Bernoulli trial with P(1) = sin²(θ/2) — exactly the circuit's
//! measurement distribution, at any register size.
//!
//! ```
//! use qgnsa::detection::Sample;
//! use qgnsa::engine::{run_qgnsa, QgnsaConfig, DEFAULT_ADJ};
//!
//! let anomalies = vec![
//!     Sample::nonself(vec![0.4, 0.5]),
//!     Sample::nonself(vec![0.6, 0.5]),
//! ];
//! let config = QgnsaConfig {
//!     max_gen: 10,
//!     population_size: 10,
//!     precision: 4,
//!     threshold: 1.6,
//!     adj: DEFAULT_ADJ,
//!     rng_seed: 1,
//! };
//! let (best, trace) = run_qgnsa(&anomalies, &config).unwrap();
//! assert!(best.fitness > 0.0);
//! assert!(!trace.generations.is_empty());
//! ```

pub mod cli;
pub mod config;
pub mod data;
pub mod detection;
pub mod encoding;
pub mod engine;
pub mod error;
pub mod eval;
pub mod protocol;
pub mod quantum;

pub use error::{Error, Result};

// The guide's code blocks double as doc-tests so they can't drift from
// the library.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(angle_register, "../../../book/src/angle-register.md");
    chapter!(encoding, "../../../book/src/encoding.md");
    chapter!(matching, "../../../book/src/matching.md");
    chapter!(quantum_engine, "../../../book/src/quantum-engine.md");
    chapter!(classical_engine, "../../../book/src/classical-engine.md");
    chapter!(data_pipeline, "../../../book/src/data-pipeline.md");
    chapter!(evaluation, "../../../book/src/evaluation.md");
}

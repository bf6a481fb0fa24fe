//! Detector-generation engines: the quantum loop and the classical baseline.

pub mod classical;
pub mod quantum;
pub mod trace;

pub use classical::{run_evoseed, GaConfig, Individual};
pub use quantum::{run_qgnsa, BestCandidate, QgnsaConfig, DEFAULT_ADJ};
pub use trace::{GenerationStats, RunTrace};

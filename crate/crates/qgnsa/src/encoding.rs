//! Bitstring-to-detector decoding.
//!
//! A measurement of the full circuit splits into M groups of `precision`
//! bits, one group per feature. Each group is read as an unsigned binary
//! code (most-significant bit first) and scaled by 1/(2^precision − 1),
//! so a feature takes one of 2^precision equally spaced values in [0, 1].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::Bitstring;

/// Maps M features × `precision` qubits onto bit-group positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitLayout {
    m: usize,
    precision: usize,
    n: usize,
}

impl QubitLayout {
    /// Layout for `m` features at `precision` qubits each; n = m × precision.
    pub fn new(m: usize, precision: usize) -> Result<Self> {
        if m == 0 || precision == 0 {
            return Err(Error::InvalidSize);
        }
        Ok(Self {
            m,
            precision,
            n: m * precision,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Total qubit count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest unsigned code a feature group can hold: 2^precision − 1.
    pub fn max_code(&self) -> u64 {
        if self.precision >= 64 {
            u64::MAX
        } else {
            (1u64 << self.precision) - 1
        }
    }
}

/// A candidate (or mature) detector: a point in [0,1]^M.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detector {
    values: Vec<f64>,
}

impl Detector {
    pub fn new(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| (0.0..=1.0).contains(v)));
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Decode a full-circuit measurement into a detector, feature group 0 first.
pub fn decode(bits: &Bitstring, layout: &QubitLayout) -> Result<Detector> {
    if bits.len() != layout.n() {
        return Err(Error::DimensionMismatch {
            expected: layout.n(),
            got: bits.len(),
        });
    }
    let denom = layout.max_code() as f64;
    let values = bits
        .bits()
        .chunks(layout.precision())
        .map(|group| {
            let code = group
                .iter()
                .fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
            code as f64 / denom
        })
        .collect();
    Ok(Detector::new(values))
}

/// Encode a detector back to bits by snapping each feature to its nearest
/// grid code. Exact inverse of [`decode`] on grid points.
pub fn encode(detector: &Detector, layout: &QubitLayout) -> Result<Bitstring> {
    if detector.len() != layout.m() {
        return Err(Error::DimensionMismatch {
            expected: layout.m(),
            got: detector.len(),
        });
    }
    let denom = layout.max_code() as f64;
    let mut bits = Vec::with_capacity(layout.n());
    for &v in detector.values() {
        let code = (v.clamp(0.0, 1.0) * denom).round() as u64;
        for i in (0..layout.precision()).rev() {
            bits.push((code >> i) & 1 == 1);
        }
    }
    Ok(Bitstring::new(bits))
}

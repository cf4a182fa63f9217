//! Batch comparison of the proof search against the sampling oracle.

use serde::{Deserialize, Serialize};

use crate::engine::Engine;
use crate::families::enumerate_vectors;
use crate::oracle::{oracle_decide, OracleClass, OracleConfig, OracleError};
use crate::vector::DimensionVector;
use crate::verdict::Status;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepBounds {
    pub max_n: u32,
    /// Defaults to `n + 1` per ambient dimension when absent; longer vectors
    /// are always trivially sparse.
    pub max_len: Option<usize>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            max_n: 6,
            max_len: None,
            seed: 0,
            samples: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub vector: DimensionVector,
    pub engine: Status,
    pub oracle: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub bounds: SweepBounds,
    pub ambients: Vec<u32>,
    pub checked: usize,
    pub dense: usize,
    pub sparse: usize,
    pub disagreements: Vec<Disagreement>,
    /// Vectors the proof search left undecided.
    pub unknown: Vec<DimensionVector>,
}

impl SweepReport {
    pub fn summary(&self) -> String {
        let unknown: Vec<String> = self.unknown.iter().map(|v| v.to_string()).collect();
        let mut s = format!(
            "checked {} vectors in ambient dimensions {}..={} ({} dense, {} sparse)\n{} disagreements\n",
            self.checked,
            self.ambients.first().copied().unwrap_or(0),
            self.ambients.last().copied().unwrap_or(0),
            self.dense,
            self.sparse,
            self.disagreements.len(),
        );
        for d in &self.disagreements {
            s += &format!("  {}: engine {} oracle {}\n", d.vector, d.engine, d.oracle);
        }
        s += &format!("{} unknown", unknown.len());
        if !unknown.is_empty() {
            s += &format!(": {}", unknown.join(", "));
        }
        s.push('\n');
        s
    }
}

/// Per-vector oracle seed, derived from the sweep seed and the position in
/// the enumeration.
fn vector_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Decides every enumerated vector with both the engine and the oracle and
/// collects the mismatches.
pub fn verify_sweep(engine: &Engine, bounds: SweepBounds) -> Result<SweepReport, OracleError> {
    let max_len = bounds.max_len.unwrap_or(bounds.max_n as usize + 1);
    let mut report = SweepReport {
        bounds,
        ambients: Vec::new(),
        checked: 0,
        dense: 0,
        sparse: 0,
        disagreements: Vec::new(),
        unknown: Vec::new(),
    };
    for (i, v) in enumerate_vectors(bounds.max_n, max_len, bounds.max_n).enumerate() {
        if report.ambients.last() != Some(&v.ambient()) {
            report.ambients.push(v.ambient());
        }
        report.checked += 1;
        let engine_status = engine.decide(&v).verdict.status;
        let cfg = OracleConfig {
            samples: bounds.samples.max(1),
            seed: vector_seed(bounds.seed, i),
            stop_at_witness: true,
            ..OracleConfig::default()
        };
        let oracle_status = match oracle_decide(&v, &cfg)?.class {
            OracleClass::CertifiedDense => Status::Dense,
            OracleClass::MonteCarloSparse => Status::Sparse,
        };
        match oracle_status {
            Status::Dense => report.dense += 1,
            _ => report.sparse += 1,
        }
        match engine_status {
            Status::Unknown => report.unknown.push(v),
            s if s != oracle_status => report.disagreements.push(Disagreement {
                vector: v,
                engine: s,
                oracle: oracle_status,
            }),
            _ => {}
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_is_clean_and_deterministic() {
        let bounds = SweepBounds {
            max_n: 4,
            ..SweepBounds::default()
        };
        let a = verify_sweep(&Engine::default(), bounds).unwrap();
        assert_eq!(a.ambients, vec![2, 3, 4]);
        assert!(a.disagreements.is_empty(), "{}", a.summary());
        assert!(a.unknown.is_empty(), "{}", a.summary());
        let b = verify_sweep(&Engine::default(), bounds).unwrap();
        assert_eq!(a, b);
    }
}

//! The JSON record emitted for a decision and stored in the cache.

use serde::{Deserialize, Serialize};

use grassdense::oracle::{Mode, OracleClass, OracleReport};
use grassdense::rules::RewriteStep;
use grassdense::{DimensionVector, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Engine,
    Oracle,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub mode: Mode,
    pub prime: Option<u64>,
    pub seed: u64,
    pub samples: usize,
    pub stab_dim: Option<i64>,
    pub expected: i64,
    pub class: OracleClass,
}

impl From<&OracleReport> for OracleSummary {
    fn from(r: &OracleReport) -> Self {
        OracleSummary {
            mode: r.mode,
            prime: r.prime,
            seed: r.seed,
            samples: r.per_sample.len(),
            stab_dim: r.stab_dim,
            expected: r.expected,
            class: r.class,
        }
    }
}

/// Everything that influences a decision; two runs with equal settings
/// produce the same record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    pub oracle: String,
    pub mode: Mode,
    pub seed: u64,
    pub samples: usize,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub vector: DimensionVector,
    pub status: Status,
    pub method: Method,
    pub trivially_sparse: bool,
    /// Certificate steps in pre-order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<RewriteStep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    pub settings: Settings,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl VerdictRecord {
    /// The record with the timestamp cleared, for comparing runs.
    pub fn untimed(&self) -> VerdictRecord {
        VerdictRecord {
            timestamp: 0,
            ..self.clone()
        }
    }

    /// One-line explanation shown after the status.
    pub fn reason(&self) -> String {
        let rules = (!self.trace.is_empty()).then(|| {
            let names: Vec<&str> = self.trace.iter().map(|s| s.rule.description()).collect();
            let clause = match &self.trace.last().expect("nonempty").params {
                grassdense::rules::Params::Fact { clause, .. } => format!(": {clause}"),
                _ => String::new(),
            };
            format!("{}{clause}", names.join(" -> "))
        });
        let sampled = self.oracle.as_ref().map(|o| match (o.class, o.stab_dim) {
            (OracleClass::CertifiedDense, Some(s)) => {
                format!("certified by a sample: stab_dim {s} = expected")
            }
            (_, Some(s)) => format!(
                "monte-carlo: stab_dim {s} > expected {} on {} samples",
                o.expected, o.samples
            ),
            _ => format!("dimension count: expected stab_dim {} < 0", o.expected),
        });
        match (sampled, rules) {
            (Some(o), Some(r)) => format!("{o}; rules: {r}"),
            (Some(o), None) => o,
            (None, Some(r)) => r,
            (None, None) => "no proof found within budget".into(),
        }
    }
}

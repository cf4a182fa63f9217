use serde::{Deserialize, Serialize};

use crate::engine::Certificate;
use crate::oracle::OracleReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Dense,
    Sparse,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Dense => "DENSE",
            Status::Sparse => "SPARSE",
            Status::Unknown => "UNKNOWN",
        })
    }
}

/// Outcome of a decision together with its evidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    /// The dimension count alone rules out a dense orbit.
    pub trivially_sparse: bool,
    /// Set when the status rests on a Monte Carlo sparse answer.
    pub probabilistic: bool,
    pub certificate: Option<Certificate>,
    pub oracle: Option<OracleReport>,
}

impl Verdict {
    pub fn unknown() -> Self {
        Verdict {
            status: Status::Unknown,
            trivially_sparse: false,
            probabilistic: false,
            certificate: None,
            oracle: None,
        }
    }

    /// Checks the structural invariants: a dense status carries evidence and
    /// the trivially-sparse flag implies a sparse status.
    pub fn is_consistent(&self) -> bool {
        let evidence = self.certificate.is_some() || self.oracle.is_some();
        (self.status != Status::Dense || evidence)
            && (!self.trivially_sparse || self.status == Status::Sparse)
    }
}

//! Dimension vectors `(d_1, ..., d_k; n)`: a multiset of subspace dimensions
//! together with the ambient dimension.
//!
//! Vectors are always stored normalized: entries equal to `0` or `n` are
//! dropped (those Grassmannians are points) and the remainder is sorted
//! ascending. A vector whose entries were all dropped is *vacuous*; it only
//! arises as the output of a reduction and is dense by convention.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VectorError {
    #[error("ambient dimension must be at least 1")]
    ZeroAmbient,
    #[error("entry {entry} is outside [0, {ambient}]")]
    OutOfRange { entry: i64, ambient: u32 },
    #[error("vector is vacuous: every entry is 0 or the ambient dimension {0}")]
    Vacuous(u32),
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(u32, u32),
    #[error("cannot parse dimension vector {input:?}: {reason}")]
    Syntax { input: String, reason: String },
}

/// A normalized dimension vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawVector", into = "RawVector")]
pub struct DimensionVector {
    dims: Vec<u32>,
    n: u32,
}

#[derive(Serialize, Deserialize)]
struct RawVector {
    dims: Vec<i64>,
    n: u32,
}

impl TryFrom<RawVector> for DimensionVector {
    type Error = VectorError;

    fn try_from(raw: RawVector) -> Result<Self, Self::Error> {
        DimensionVector::reduce_signed(&raw.dims, raw.n)
    }
}

impl From<DimensionVector> for RawVector {
    fn from(d: DimensionVector) -> Self {
        RawVector {
            dims: d.dims.iter().map(|&x| x as i64).collect(),
            n: d.n,
        }
    }
}

impl DimensionVector {
    /// Normalizes raw input. Fails if nothing is left after dropping `0` and
    /// `n` entries.
    pub fn normalize(raw: &[u32], ambient: u32) -> Result<Self, VectorError> {
        let d = Self::reduce(raw, ambient)?;
        if d.is_vacuous() {
            return Err(VectorError::Vacuous(ambient));
        }
        Ok(d)
    }

    /// Like [`normalize`](Self::normalize) but keeps a vacuous result.
    pub fn reduce(raw: &[u32], ambient: u32) -> Result<Self, VectorError> {
        if ambient == 0 {
            return Err(VectorError::ZeroAmbient);
        }
        let mut dims = Vec::with_capacity(raw.len());
        for &x in raw {
            if x > ambient {
                return Err(VectorError::OutOfRange {
                    entry: x as i64,
                    ambient,
                });
            }
            if x != 0 && x != ambient {
                dims.push(x);
            }
        }
        dims.sort_unstable();
        Ok(DimensionVector { dims, n: ambient })
    }

    /// Reduction entry point for arithmetic that may go negative.
    pub fn reduce_signed(raw: &[i64], ambient: u32) -> Result<Self, VectorError> {
        let mut dims = Vec::with_capacity(raw.len());
        for &x in raw {
            if x < 0 || x > ambient as i64 {
                return Err(VectorError::OutOfRange { entry: x, ambient });
            }
            dims.push(x as u32);
        }
        Self::reduce(&dims, ambient)
    }

    pub fn vacuous(ambient: u32) -> Self {
        DimensionVector {
            dims: Vec::new(),
            n: ambient.max(1),
        }
    }

    /// Builds from exponent notation: `pairs` are `(value, multiplicity)`.
    pub fn from_powers(pairs: &[(u32, u32)], ambient: u32) -> Result<Self, VectorError> {
        let raw: Vec<u32> = pairs
            .iter()
            .flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize))
            .collect();
        Self::normalize(&raw, ambient)
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn is_vacuous(&self) -> bool {
        self.dims.is_empty()
    }

    /// Largest entry (0 for a vacuous vector).
    pub fn size(&self) -> u32 {
        self.dims.last().copied().unwrap_or(0)
    }

    pub fn min_entry(&self) -> u32 {
        self.dims.first().copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().map(|&x| x as u64).sum()
    }

    pub fn excess(&self) -> i64 {
        self.total() as i64 - self.n as i64
    }

    /// Dimension of the product of Grassmannians, `sum d_i (n - d_i)`.
    pub fn orbit_space_dim(&self) -> i64 {
        let n = self.n as i64;
        self.dims.iter().map(|&d| d as i64 * (n - d as i64)).sum()
    }

    /// `n^2 - 1 - orbit_space_dim`: the stabilizer dimension of a point with
    /// a dense orbit. Negative when the dimension count already fails.
    pub fn expected_stab_dim(&self) -> i64 {
        let n = self.n as i64;
        n * n - 1 - self.orbit_space_dim()
    }

    pub fn is_trivially_sparse(&self) -> bool {
        self.expected_stab_dim() < 0
    }

    pub fn complement(&self) -> Self {
        let mut dims: Vec<u32> = self.dims.iter().map(|&d| self.n - d).collect();
        dims.reverse();
        DimensionVector { dims, n: self.n }
    }

    /// Lexicographically smaller of `self` and its complement.
    pub fn canonical(&self) -> Self {
        let c = self.complement();
        if c.dims < self.dims {
            c
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.complement().dims >= self.dims
    }

    pub fn multiplicity(&self, value: u32) -> usize {
        let lo = self.dims.partition_point(|&x| x < value);
        let hi = self.dims.partition_point(|&x| x <= value);
        hi - lo
    }

    /// Distinct values with multiplicities, ascending.
    pub fn powers(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &x in &self.dims {
            match out.last_mut() {
                Some((v, e)) if *v == x => *e += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// Multiset containment: every value occurs in `self` at least as often
    /// as in `other`.
    pub fn dominates(&self, other: &DimensionVector) -> Result<bool, VectorError> {
        if self.n != other.n {
            return Err(VectorError::AmbientMismatch(self.n, other.n));
        }
        Ok(other
            .powers()
            .iter()
            .all(|&(v, e)| self.multiplicity(v) >= e as usize))
    }

    /// New vector with the given entries removed (one copy each).
    /// Returns `None` if some entry is not present often enough.
    pub fn without(&self, removed: &[u32]) -> Option<Vec<u32>> {
        let mut rest = self.dims.clone();
        for &r in removed {
            let pos = rest.iter().position(|&x| x == r)?;
            rest.remove(pos);
        }
        Some(rest)
    }
}

impl PartialOrd for DimensionVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded order: ambient dimension, then length, then entries.
impl Ord for DimensionVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.dims.len().cmp(&other.dims.len()))
            .then_with(|| self.dims.cmp(&other.dims))
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (v, e)) in self.powers().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        write!(f, ";{})", self.n)
    }
}

impl FromStr for DimensionVector {
    type Err = VectorError;

    /// Accepts `(t_1,...,t_k;n)` with optional parentheses, where each `t_i`
    /// is `d` or `d^e`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = |reason: &str| VectorError::Syntax {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut body = s.trim();
        if let Some(rest) = body.strip_prefix('(') {
            body = rest
                .strip_suffix(')')
                .ok_or_else(|| syntax("unbalanced parenthesis"))?;
        } else if body.ends_with(')') {
            return Err(syntax("unbalanced parenthesis"));
        }
        let (entries, ambient) = body
            .split_once(';')
            .ok_or_else(|| syntax("missing ';' before the ambient dimension"))?;
        let ambient: u32 = ambient
            .trim()
            .parse()
            .map_err(|_| syntax("ambient dimension is not a non-negative integer"))?;
        let mut raw = Vec::new();
        if !entries.trim().is_empty() {
            for term in entries.split(',') {
                let term = term.trim();
                let (base, exp) = match term.split_once('^') {
                    Some((b, e)) => (b.trim(), e.trim()),
                    None => (term, "1"),
                };
                let base: u32 = base
                    .parse()
                    .map_err(|_| syntax(&format!("bad entry {term:?}")))?;
                let exp: u32 = exp
                    .parse()
                    .map_err(|_| syntax(&format!("bad exponent in {term:?}")))?;
                if exp > 10_000 {
                    return Err(syntax("exponent too large"));
                }
                raw.extend(std::iter::repeat_n(base, exp as usize));
            }
        }
        DimensionVector::normalize(&raw, ambient)
    }
}

/// Shorthand used throughout the tests: `dv("1^2,2^2;3")`.
pub fn dv(s: &str) -> DimensionVector {
    s.parse()
        .unwrap_or_else(|e| panic!("invalid vector literal {s:?}: {e}"))
}

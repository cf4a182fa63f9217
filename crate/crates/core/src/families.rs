//! Generated families of dense vectors, bounded enumeration, and the
//! size-by-size classification driver.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::Engine;
use crate::oracle::OracleConfig;
use crate::vector::DimensionVector;
use crate::verdict::Status;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("base {base} violates the side condition: {reason}")]
    SideCondition { base: String, reason: String },
    #[error("classification needs size at least 1")]
    ZeroSize,
}

fn side(base: &DimensionVector, reason: impl Into<String>) -> FamilyError {
    FamilyError::SideCondition {
        base: base.to_string(),
        reason: reason.into(),
    }
}

/// `F_0 = 0, F_1 = 1, ...` up to `F_{k+1}`.
fn fibonacci(k: usize) -> Vec<u64> {
    let mut f = vec![0u64, 1];
    while f.len() < k + 2 {
        let m = f.len();
        f.push(f[m - 1] + f[m - 2]);
    }
    f
}

/// From a dense base `(a_1, ..., a_r; b)` with `b + a_t <= n = sum(a)`, the
/// vectors `d_j = (a, b, F_1 n + F_0 b, ..., F_j n + F_{j-1} b; F_{j+1} n + F_j b)`
/// for `j = 0..=depth` are all dense.
pub fn fibonacci_family(
    base: &DimensionVector,
    depth: usize,
) -> Result<Vec<DimensionVector>, FamilyError> {
    let a = base.dims();
    let b = base.ambient() as u64;
    let n = base.total();
    if a.is_empty() {
        return Err(side(base, "no entries"));
    }
    if let Some(&t) = a.iter().find(|&&t| b + t as u64 > n) {
        return Err(side(base, format!("{b} + {t} exceeds the entry sum {n}")));
    }
    let f = fibonacci(depth);
    let mut out = Vec::with_capacity(depth + 1);
    for j in 0..=depth {
        let mut raw: Vec<u64> = a.iter().map(|&x| x as u64).collect();
        raw.push(b);
        for t in 1..=j {
            raw.push(f[t] * n + f[t - 1] * b);
        }
        let ambient = f[j + 1] * n + f[j] * b;
        let ambient = u32::try_from(ambient).map_err(|_| side(base, "ambient overflows"))?;
        let raw: Vec<u32> = raw.into_iter().map(|x| x as u32).collect();
        out.push(DimensionVector::normalize(&raw, ambient).map_err(|e| side(base, e.to_string()))?);
    }
    Ok(out)
}

/// From `(a_1, ..., a_r, b; n)` with `sum(a) = n`, the vectors
/// `(a, b^j; n + (j - 1) b)` for `j = 1..=depth`.
pub fn repeat_family(
    base: &DimensionVector,
    depth: usize,
) -> Result<Vec<DimensionVector>, FamilyError> {
    let n = base.ambient() as i64;
    let b = base.total() as i64 - n;
    if b < 1 || base.multiplicity(b as u32) == 0 {
        return Err(side(
            base,
            format!("entry sum minus n is {b}, which is not an entry"),
        ));
    }
    let b = b as u32;
    let a = base.without(&[b]).expect("b is an entry");
    let mut out = Vec::with_capacity(depth);
    for j in 1..=depth as u32 {
        let mut raw = a.clone();
        raw.extend(std::iter::repeat_n(b, j as usize));
        let ambient = base.ambient() + (j - 1) * b;
        out.push(DimensionVector::normalize(&raw, ambient).map_err(|e| side(base, e.to_string()))?);
    }
    Ok(out)
}

/// Every normalized vector with `n <= max_n`, length `<= max_len` and
/// entries `<= max_size`, ordered by ambient dimension, then length, then
/// entries.
pub fn enumerate_vectors(max_n: u32, max_len: usize, max_size: u32) -> VectorStream {
    VectorStream {
        max_n,
        max_len,
        max_size,
        n: 2,
        cur: Vec::new(),
    }
}

/// Lazy iterator returned by [`enumerate_vectors`].
#[derive(Debug, Clone)]
pub struct VectorStream {
    max_n: u32,
    max_len: usize,
    max_size: u32,
    n: u32,
    cur: Vec<u32>,
}

impl VectorStream {
    fn top(&self) -> u32 {
        self.max_size.min(self.n.saturating_sub(1))
    }
}

impl Iterator for VectorStream {
    type Item = DimensionVector;

    fn next(&mut self) -> Option<DimensionVector> {
        if self.max_len == 0 || self.max_size == 0 {
            return None;
        }
        loop {
            if self.n > self.max_n {
                return None;
            }
            let m = self.top();
            if self.cur.is_empty() {
                self.cur = vec![1];
            } else if let Some(i) = self.cur.iter().rposition(|&x| x < m) {
                let v = self.cur[i] + 1;
                for x in &mut self.cur[i..] {
                    *x = v;
                }
            } else if self.cur.len() < self.max_len {
                self.cur = vec![1; self.cur.len() + 1];
            } else {
                self.n += 1;
                self.cur.clear();
                continue;
            }
            return Some(
                DimensionVector::normalize(&self.cur, self.n).expect("entries are in range"),
            );
        }
    }
}

/// Anything that can settle density for a vector.
pub trait DecisionBackend: Sync {
    fn decide(&self, d: &DimensionVector) -> Status;
}

/// The proof search with the sampling oracle as fallback.
pub struct EngineBackend {
    pub engine: Engine,
    pub oracle: Option<OracleConfig>,
}

impl EngineBackend {
    pub fn new(oracle: Option<OracleConfig>) -> Self {
        EngineBackend {
            engine: Engine::default(),
            oracle,
        }
    }
}

impl DecisionBackend for EngineBackend {
    fn decide(&self, d: &DimensionVector) -> Status {
        match &self.oracle {
            Some(cfg) => self
                .engine
                .decide_with_oracle(d, cfg)
                .map(|r| r.verdict.status)
                .unwrap_or(Status::Unknown),
            None => self.engine.decide(d).verdict.status,
        }
    }
}

/// Excess values covered by the reduction to a small ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRule {
    pub excess: i64,
    pub description: String,
    /// Dense vectors of ambient dimension `excess` that the reduction lands
    /// on; empty when every vector with this excess is dense.
    pub dense_targets: Vec<DimensionVector>,
}

/// One instance of the finiteness inequality used to generate candidates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailBound {
    /// Total dimension is `n + k + 1`.
    pub k: u32,
    pub inequality: String,
    pub candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeClassification {
    pub size: u32,
    pub infinite_families: Vec<FamilyRule>,
    /// Dense vectors of size exactly `size` with excess above `size`.
    pub exceptional_dense: Vec<DimensionVector>,
    pub search_bound_used: Vec<TailBound>,
    /// Vectors the backend could not settle; empty for a complete result.
    pub unresolved: Vec<DimensionVector>,
}

fn decide_all(
    backend: &dyn DecisionBackend,
    vs: Vec<DimensionVector>,
) -> Vec<(DimensionVector, Status)> {
    vs.into_par_iter()
        .map(|v| {
            let s = backend.decide(&v);
            (v, s)
        })
        .collect()
}

/// Counts `(e_1, ..., e_l)` with `e_l >= 1` and
/// `sum (k + 1 - i) i e_i <= k (k + 2)`.
fn tail_candidates(l: u32, k: u32) -> Vec<Vec<u32>> {
    let cap = (k * (k + 2)) as u64;
    let coeff: Vec<u64> = (1..=l).map(|i| ((k + 1 - i) * i) as u64).collect();
    let mut out = Vec::new();
    let mut e = vec![0u32; l as usize];
    fn rec(i: usize, used: u64, cap: u64, coeff: &[u64], e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == coeff.len() {
            if e[coeff.len() - 1] >= 1 {
                out.push(e.clone());
            }
            return;
        }
        let mut c = 0;
        while used + c as u64 * coeff[i] <= cap {
            e[i] = c;
            rec(i + 1, used + c as u64 * coeff[i], cap, coeff, e, out);
            c += 1;
        }
        e[i] = 0;
    }
    rec(0, 0, cap, &coeff, &mut e, &mut out);
    out
}

/// Rebuilds the classification of dense vectors of size `l`: the excess
/// families keyed to small ambient dimensions, and the finite list of dense
/// vectors with excess above `l`.
pub fn classify_size(
    l: u32,
    backend: &dyn DecisionBackend,
) -> Result<SizeClassification, FamilyError> {
    if l == 0 {
        return Err(FamilyError::ZeroSize);
    }
    let mut unresolved = Vec::new();
    let mut families = vec![FamilyRule {
        excess: 1,
        description: "excess at most 1: always dense".into(),
        dense_targets: Vec::new(),
    }];
    for e in 2..=l {
        let all: Vec<DimensionVector> = enumerate_vectors(e, e as usize + 1, e - 1)
            .filter(|v| v.ambient() == e)
            .collect();
        let mut dense = vec![DimensionVector::vacuous(e)];
        for (v, s) in decide_all(backend, all) {
            match s {
                Status::Dense => dense.push(v),
                Status::Sparse => {}
                Status::Unknown => unresolved.push(v),
            }
        }
        dense.sort();
        families.push(FamilyRule {
            excess: e as i64,
            description: format!(
                "excess {e}: dense iff the entries below {e} form a dense vector in dimension {e}"
            ),
            dense_targets: dense,
        });
    }

    let mut candidates: Vec<DimensionVector> = Vec::new();
    for n in l + 1..2 * l {
        candidates.extend(
            enumerate_vectors(n, n as usize + 1, l)
                .filter(|v| v.ambient() == n && v.size() == l && v.excess() > l as i64),
        );
    }
    let mut bounds = Vec::new();
    for k in l..2 * l {
        let mut count = 0;
        for e in tail_candidates(l, k) {
            let total: u64 = e.iter().enumerate().map(|(i, &c)| (i as u64 + 1) * c as u64).sum();
            let n = total as i64 - k as i64 - 1;
            if n < 2 * l as i64 {
                continue;
            }
            let pairs: Vec<(u32, u32)> = e
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (i as u32 + 1, c))
                .collect();
            if let Ok(v) = DimensionVector::from_powers(&pairs, n as u32) {
                candidates.push(v);
                count += 1;
            }
        }
        let terms: Vec<String> = (1..=l)
            .map(|i| format!("{}*e{i}", (k + 1 - i) * i))
            .collect();
        bounds.push(TailBound {
            k,
            inequality: format!("{} <= {}", terms.join(" + "), k * (k + 2)),
            candidates: count,
        });
    }

    let mut exceptional = Vec::new();
    for (v, s) in decide_all(backend, candidates) {
        match s {
            Status::Dense => exceptional.push(v),
            Status::Sparse => {}
            Status::Unknown => unresolved.push(v),
        }
    }
    sort_tail(&mut exceptional);
    exceptional.dedup();
    unresolved.sort();
    Ok(SizeClassification {
        size: l,
        infinite_families: families,
        exceptional_dense: exceptional,
        search_bound_used: bounds,
        unresolved,
    })
}

/// Orders vectors by ambient dimension, then total, then entries.
pub fn sort_tail(vs: &mut [DimensionVector]) {
    vs.sort_by(|a, b| {
        (a.ambient(), a.total(), a.dims()).cmp(&(b.ambient(), b.total(), b.dims()))
    });
}

impl SizeClassification {
    /// Human-readable report listing the families and the finite tail.
    pub fn to_text(&self) -> String {
        let l = self.size;
        let mut s = String::new();
        let _ = writeln!(s, "Dense vectors of size {l}, by excess dimension:");
        for f in &self.infinite_families {
            if f.dense_targets.is_empty() {
                let _ = writeln!(s, "* excess <= {}: all dense", f.excess);
            } else {
                let list: Vec<String> = f.dense_targets.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(
                    s,
                    "* excess {}: dense iff the entries below {} reduce to one of {}",
                    f.excess,
                    f.excess,
                    list.join(", ")
                );
            }
        }
        let tail: Vec<String> = self.exceptional_dense.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            s,
            "* excess >= {}: finitely many ({}): {}",
            l + 1,
            tail.len(),
            tail.join(", ")
        );
        for b in &self.search_bound_used {
            let _ = writeln!(s, "  k = {}: {} ({} candidates)", b.k, b.inequality, b.candidates);
        }
        if !self.unresolved.is_empty() {
            let list: Vec<String> = self.unresolved.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "unresolved: {}", list.join(", "));
        }
        s
    }

    /// The finite tail, one vector per line.
    pub fn tail_lines(&self) -> String {
        self.exceptional_dense
            .iter()
            .map(|v| format!("{v}\n"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::dv;

    #[test]
    fn fibonacci_examples() {
        let base = dv("1,1,1;2");
        assert_eq!(
            fibonacci_family(&base, 1).unwrap(),
            vec![dv("1,1,1,2;3"), dv("1,1,1,2,3;5")]
        );
        assert_eq!(fibonacci_family(&base, 3).unwrap()[3], dv("1,1,1,2,3,5,8;13"));
        assert_eq!(fibonacci_family(&base, 0).unwrap(), vec![dv("1,1,1,2;3")]);
        assert_eq!(fibonacci_family(&base, 5).unwrap()[5].ambient(), 34);
        assert!(fibonacci_family(&dv("1,1;3"), 2).is_err());
    }

    #[test]
    fn repeat_examples() {
        let base = dv("1,1,1,2;3");
        assert!(repeat_family(&base, 2).unwrap().contains(&dv("1,1,1,2,2;5")));
        assert_eq!(repeat_family(&base, 3).unwrap()[2], dv("1,1,1,2,2,2;7"));
        assert_eq!(repeat_family(&base, 1).unwrap(), vec![base]);
        assert!(repeat_family(&dv("1,1;3"), 2).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let v: Vec<_> = enumerate_vectors(2, 2, 1).collect();
        assert_eq!(v, vec![dv("1;2"), dv("1,1;2")]);
        // three vectors in dimension 2 and nine in dimension 3
        assert_eq!(enumerate_vectors(3, 3, 2).count(), 12);
        let all: Vec<_> = enumerate_vectors(6, 6, 5).collect();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn tail_inequality_candidates() {
        // k = 2, l = 2: 2 e1 + 2 e2 <= 8 with e2 >= 1
        let c = tail_candidates(2, 2);
        assert!(c.iter().all(|e| 2 * e[0] + 2 * e[1] <= 8 && e[1] >= 1));
        assert_eq!(c.len(), 10);
    }
}

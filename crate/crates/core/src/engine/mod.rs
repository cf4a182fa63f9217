//! Memoized proof search over the rewrite rules.

mod certificate;

use std::collections::{HashMap, HashSet};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

pub use certificate::{verify_certificate, Certificate, CertificateError, ProofNode};

use crate::oracle::{self, OracleConfig, OracleError, OracleReport, OracleClass};
use crate::rules::{self, Direction, RewriteStep, RuleLimits};
use crate::vector::{dv, DimensionVector};
use crate::verdict::{Status, Verdict};

pub const DEFAULT_BUDGET: u64 = 50_000;

/// Sparse vectors the store starts from: the non-trivial sparse vectors of
/// length four in ambient dimensions 3 to 5.
pub const SPARSE_SEEDS: [&str; 8] = [
    "1^2,2^2;3",
    "1^2,3^2;4",
    "1,2^2,3;4",
    "1^2,4^2;5",
    "1,2,3,4;5",
    "2^3,4;5",
    "1,3^3;5",
    "2^2,3^2;5",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Maximum number of vectors expanded per call to `decide`.
    pub budget: u64,
    pub limits: RuleLimits,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            budget: DEFAULT_BUDGET,
            limits: RuleLimits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub vector: DimensionVector,
    pub verdict: Verdict,
    pub nodes_explored: u64,
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone)]
struct Proof {
    status: Status,
    step: RewriteStep,
}

/// Proof search with a memo table and a store of known sparse vectors, both
/// shared between calls and threads.
#[derive(Debug)]
pub struct Engine {
    config: EngineConfig,
    memo: RwLock<HashMap<DimensionVector, Proof>>,
    store: RwLock<HashMap<u32, Vec<DimensionVector>>>,
}

struct Search<'a> {
    engine: &'a Engine,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    on_stack: HashMap<DimensionVector, usize>,
    failed: HashSet<DimensionVector>,
    /// Shallowest stack depth referenced by a cycle cut in the current subtree.
    low: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new(EngineConfig::default())
    }
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        let engine = Engine {
            config,
            memo: RwLock::new(HashMap::new()),
            store: RwLock::new(HashMap::new()),
        };
        for s in SPARSE_SEEDS {
            let d = dv(s);
            let mut search = Search::new(&engine, u64::MAX);
            let st = search.prove(&d);
            debug_assert_eq!(st, Some(Status::Sparse), "seed {s}");
        }
        engine
    }

    pub fn with_budget(budget: u64) -> Self {
        Self::new(EngineConfig {
            budget,
            ..EngineConfig::default()
        })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    /// Number of memoized canonical vectors.
    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn decide(&self, d: &DimensionVector) -> DecisionReport {
        let mut search = Search::new(self, self.config.budget.max(1));
        let status = search.prove(d);
        let verdict = match status {
            Some(st) => Verdict {
                status: st,
                trivially_sparse: d.is_trivially_sparse(),
                probabilistic: false,
                certificate: Some(self.certificate(d).expect("proved vector has a proof")),
                oracle: None,
            },
            None => Verdict::unknown(),
        };
        DecisionReport {
            vector: d.clone(),
            verdict,
            nodes_explored: search.nodes,
            budget_exhausted: search.exhausted,
        }
    }

    /// Runs the search and, on an unknown outcome, falls back to the oracle.
    pub fn decide_with_oracle(
        &self,
        d: &DimensionVector,
        cfg: &OracleConfig,
    ) -> Result<DecisionReport, OracleError> {
        let mut report = self.decide(d);
        if report.verdict.status == Status::Unknown {
            let o = oracle::oracle_decide(d, cfg)?;
            report.verdict = verdict_from_oracle(d, o);
        }
        Ok(report)
    }

    /// Memoized verdict for `d`, if any.
    pub fn lookup(&self, d: &DimensionVector) -> Option<Status> {
        let memo = self.memo.read().expect("memo lock");
        memo.get(&d.canonical()).map(|p| p.status)
    }

    /// Builds the proof tree for an already decided vector.
    pub fn certificate(&self, d: &DimensionVector) -> Option<Certificate> {
        let memo = self.memo.read().expect("memo lock");
        let claim = memo.get(&d.canonical())?.status;
        let tree = build_tree(&memo, d)?;
        Some(Certificate {
            root: d.clone(),
            claim,
            limits: self.config.limits,
            tree,
        })
    }

    /// Known sparse vectors (canonical forms) of the given ambient dimension.
    pub fn sparse_store(&self, ambient: u32) -> Vec<DimensionVector> {
        let store = self.store.read().expect("store lock");
        store.get(&ambient).cloned().unwrap_or_default()
    }

    fn record(&self, c: DimensionVector, proof: Proof) {
        let sparse = proof.status == Status::Sparse;
        {
            let mut memo = self.memo.write().expect("memo lock");
            if memo.contains_key(&c) {
                return;
            }
            memo.insert(c.clone(), proof);
        }
        if sparse && !c.is_vacuous() {
            let mut store = self.store.write().expect("store lock");
            let bucket = store.entry(c.ambient()).or_default();
            let cc = c.complement();
            let redundant = bucket.iter().any(|e| {
                [e.clone(), e.complement()]
                    .iter()
                    .any(|w| c.dominates(w).unwrap_or(false) || cc.dominates(w).unwrap_or(false))
            });
            if !redundant {
                bucket.push(c);
            }
        }
    }
}

/// Wraps an oracle report as a verdict.
pub fn verdict_from_oracle(d: &DimensionVector, o: OracleReport) -> Verdict {
    let dense = o.class == OracleClass::CertifiedDense;
    Verdict {
        status: if dense { Status::Dense } else { Status::Sparse },
        trivially_sparse: d.is_trivially_sparse(),
        probabilistic: !dense && !d.is_trivially_sparse(),
        certificate: None,
        oracle: Some(o),
    }
}

fn build_tree(memo: &HashMap<DimensionVector, Proof>, v: &DimensionVector) -> Option<ProofNode> {
    let proof = memo.get(&v.canonical())?;
    let inner = |step: &RewriteStep| -> Option<ProofNode> {
        let children = step
            .outputs
            .iter()
            .map(|o| build_tree(memo, o))
            .collect::<Option<Vec<_>>>()?;
        Some(ProofNode {
            step: step.clone(),
            children,
        })
    };
    if proof.step.input == *v {
        inner(&proof.step)
    } else {
        Some(ProofNode {
            step: rules::complement_step(v),
            children: vec![inner(&proof.step)?],
        })
    }
}

fn base_status(step: &RewriteStep) -> Status {
    match step.direction {
        Direction::BaseDense => Status::Dense,
        _ => Status::Sparse,
    }
}

impl<'a> Search<'a> {
    fn new(engine: &'a Engine, budget: u64) -> Self {
        Search {
            engine,
            budget,
            nodes: 0,
            exhausted: false,
            on_stack: HashMap::new(),
            failed: HashSet::new(),
            low: usize::MAX,
        }
    }

    fn prove(&mut self, v: &DimensionVector) -> Option<Status> {
        let c = v.canonical();
        if let Some(st) = self.engine.lookup(&c) {
            return Some(st);
        }
        if let Some(&depth) = self.on_stack.get(&c) {
            self.low = self.low.min(depth);
            return None;
        }
        if self.exhausted || self.failed.contains(&c) {
            return None;
        }
        if self.nodes >= self.budget {
            self.exhausted = true;
            return None;
        }
        self.nodes += 1;

        let depth = self.on_stack.len();
        self.on_stack.insert(c.clone(), depth);
        let saved_low = std::mem::replace(&mut self.low, usize::MAX);
        let found = self.expand(&c);
        self.on_stack.remove(&c);
        let cut_above = self.low < depth;
        self.low = saved_low.min(self.low);

        match found {
            Some(proof) => {
                let st = proof.status;
                self.engine.record(c, proof);
                Some(st)
            }
            None => {
                if !cut_above && !self.exhausted {
                    self.failed.insert(c);
                }
                None
            }
        }
    }

    fn expand(&mut self, c: &DimensionVector) -> Option<Proof> {
        let limits = self.engine.config.limits;
        if let Some(step) = rules::base_facts(c, &limits).into_iter().next() {
            return Some(Proof {
                status: base_status(&step),
                step,
            });
        }

        let store = self.engine.sparse_store(c.ambient());
        if let Some(step) = rules::domination(c, &store) {
            if self.prove(&step.outputs[0]) == Some(Status::Sparse) {
                return Some(Proof {
                    status: Status::Sparse,
                    step,
                });
            }
        }

        let cc = c.complement();
        let sides: Vec<&DimensionVector> = if cc == *c { vec![c] } else { vec![c, &cc] };
        let mut reductions: Vec<RewriteStep> = Vec::new();
        for side in &sides {
            reductions.extend(rules::iff_reductions(side, &limits));
        }
        // rule order first, then side
        reductions.sort_by_key(|s| rule_rank(s.rule));
        for step in reductions {
            if let Some(st) = self.prove(&step.outputs[0]) {
                return Some(Proof { status: st, step });
            }
            if self.exhausted {
                return None;
            }
        }

        for side in &sides {
            for step in rules::merge_pair(side) {
                if self.prove(&step.outputs[0]) == Some(Status::Sparse) {
                    return Some(Proof {
                        status: Status::Sparse,
                        step,
                    });
                }
                if self.exhausted {
                    return None;
                }
            }
        }
        None
    }
}

fn rule_rank(r: rules::RuleId) -> usize {
    use rules::RuleId::*;
    match r {
        SpanRestriction => 0,
        ComplementaryPair => 1,
        SpanIntersect => 2,
        RepeatedPair => 3,
        LargestBlock => 4,
        Excess => 5,
        IntersectionSwap => 6,
        _ => 7,
    }
}

/// Decides `d` with a fresh engine.
pub fn decide(d: &DimensionVector, budget: u64) -> DecisionReport {
    Engine::with_budget(budget).decide(d)
}

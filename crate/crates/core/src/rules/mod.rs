//! Rewrite rules. Each rule is a pure function from a dimension vector to the
//! steps it licenses: either a base fact (dense or sparse outright) or a
//! reduction to other vectors together with the direction in which density
//! transfers.

use serde::{Deserialize, Serialize};

use crate::vector::DimensionVector;

mod balanced;
mod base;
mod reductions;
mod subsets;
pub mod table;

pub use balanced::{balanced, balanced_exception};
pub use base::{length_four, points_base, sum_bound, trivially_sparse, two_n_subsum, vacuous};
pub use reductions::{
    complement_step, complementary_pair, domination, excess_reduction, intersection_swap,
    largest_block, merge_pair, repeated_pair, span_intersect, span_restriction,
};
pub use table::size_table;

/// Stable rule identifiers. The serialized names appear in certificates and
/// the verdict cache, so they must not change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "SumDense")]
    SumBound,
    #[serde(rename = "L3")]
    SpanRestriction,
    #[serde(rename = "L4Merge")]
    Merge,
    #[serde(rename = "SubseqTwoN")]
    TwoNSubsum,
    #[serde(rename = "L6")]
    RepeatedPair,
    #[serde(rename = "L7")]
    LargestBlock,
    #[serde(rename = "L8")]
    ComplementaryPair,
    #[serde(rename = "L9")]
    SpanIntersect,
    #[serde(rename = "L10")]
    IntersectionSwap,
    #[serde(rename = "Length4")]
    LengthFour,
    PointsBase,
    SizeTable,
    Balanced,
    #[serde(rename = "ExcessL1")]
    Excess,
    Domination,
    Complement,
    TriviallySparse,
    Vacuous,
}

impl RuleId {
    pub const ALL: [RuleId; 18] = [
        RuleId::SumBound,
        RuleId::SpanRestriction,
        RuleId::Merge,
        RuleId::TwoNSubsum,
        RuleId::RepeatedPair,
        RuleId::LargestBlock,
        RuleId::ComplementaryPair,
        RuleId::SpanIntersect,
        RuleId::IntersectionSwap,
        RuleId::LengthFour,
        RuleId::PointsBase,
        RuleId::SizeTable,
        RuleId::Balanced,
        RuleId::Excess,
        RuleId::Domination,
        RuleId::Complement,
        RuleId::TriviallySparse,
        RuleId::Vacuous,
    ];

    /// Human-readable name used in trace output.
    pub fn description(self) -> &'static str {
        match self {
            RuleId::SumBound => "sum bound",
            RuleId::SpanRestriction => "span-restriction reduction",
            RuleId::Merge => "merge",
            RuleId::TwoNSubsum => "2n sub-sum",
            RuleId::RepeatedPair => "repeated-pair collapse",
            RuleId::LargestBlock => "largest-block reduction",
            RuleId::ComplementaryPair => "complementary-pair reduction",
            RuleId::SpanIntersect => "span-intersect reduction",
            RuleId::IntersectionSwap => "intersection swap",
            RuleId::LengthFour => "length-4 theorem",
            RuleId::PointsBase => "points in general position",
            RuleId::SizeTable => "small-size classification",
            RuleId::Balanced => "balanced theorem",
            RuleId::Excess => "excess reduction",
            RuleId::Domination => "domination",
            RuleId::Complement => "complement",
            RuleId::TriviallySparse => "dimension count",
            RuleId::Vacuous => "vacuous",
        }
    }

    pub fn serialized_name(self) -> &'static str {
        match self {
            RuleId::SumBound => "SumDense",
            RuleId::SpanRestriction => "L3",
            RuleId::Merge => "L4Merge",
            RuleId::TwoNSubsum => "SubseqTwoN",
            RuleId::RepeatedPair => "L6",
            RuleId::LargestBlock => "L7",
            RuleId::ComplementaryPair => "L8",
            RuleId::SpanIntersect => "L9",
            RuleId::IntersectionSwap => "L10",
            RuleId::LengthFour => "Length4",
            RuleId::PointsBase => "PointsBase",
            RuleId::SizeTable => "SizeTable",
            RuleId::Balanced => "Balanced",
            RuleId::Excess => "ExcessL1",
            RuleId::Domination => "Domination",
            RuleId::Complement => "Complement",
            RuleId::TriviallySparse => "TriviallySparse",
            RuleId::Vacuous => "Vacuous",
        }
    }
}

/// How density transfers across a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// Input is dense exactly when every output is.
    Iff,
    /// Outputs dense implies input dense.
    DenseIf,
    /// Outputs sparse implies input sparse.
    SparseIf,
    BaseDense,
    BaseSparse,
}

impl Direction {
    pub fn is_base(self) -> bool {
        matches!(self, Direction::BaseDense | Direction::BaseSparse)
    }
}

/// Which side of the complement pair a rule inspected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Direct,
    Complement,
}

impl Side {
    pub fn apply(self, d: &DimensionVector) -> DimensionVector {
        match self {
            Side::Direct => d.clone(),
            Side::Complement => d.complement(),
        }
    }
}

/// Rule-specific witness data. Subsets are recorded as ascending value lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Params {
    None,
    /// A base fact with a short explanation of the clause that fired.
    Fact { side: Side, clause: String },
    /// `kept` spans a subspace of codimension `k`.
    Split { kept: Vec<u32>, k: u32 },
    Merge { pair: [u32; 2] },
    Subset { side: Side, subset: Vec<u32> },
    Repeated { b: u32 },
    Largest { b: u32 },
    Pair { pair: [u32; 2], k: u32 },
    PairSpan { pair: [u32; 2], k: u32, m: u32 },
    Swap { subset: Vec<u32> },
    Excess { l: u32 },
    Dominates { side: Side },
}

/// One rule application.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RewriteStep {
    pub rule: RuleId,
    pub direction: Direction,
    pub params: Params,
    #[serde(rename = "from")]
    pub input: DimensionVector,
    #[serde(rename = "to")]
    pub outputs: Vec<DimensionVector>,
}

impl RewriteStep {
    pub fn base(
        rule: RuleId,
        dense: bool,
        params: Params,
        input: &DimensionVector,
    ) -> Self {
        RewriteStep {
            rule,
            direction: if dense {
                Direction::BaseDense
            } else {
                Direction::BaseSparse
            },
            params,
            input: input.clone(),
            outputs: Vec::new(),
        }
    }

    pub fn reduce(
        rule: RuleId,
        direction: Direction,
        params: Params,
        input: &DimensionVector,
        output: DimensionVector,
    ) -> Self {
        RewriteStep {
            rule,
            direction,
            params,
            input: input.clone(),
            outputs: vec![output],
        }
    }

    /// One-line rendering for traces.
    pub fn summary(&self) -> String {
        let clause = match &self.params {
            Params::Fact { clause, .. } => format!(": {clause}"),
            _ => String::new(),
        };
        let outs: Vec<String> = self.outputs.iter().map(|o| o.to_string()).collect();
        if outs.is_empty() {
            format!("{} [{}{}]", self.input, self.rule.description(), clause)
        } else {
            format!(
                "{} -> {} [{}]",
                self.input,
                outs.join(", "),
                self.rule.description()
            )
        }
    }
}

/// Enumeration limits for rules that search over sub-multisets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleLimits {
    /// Maximum number of sub-multisets inspected per rule application.
    pub max_subsets: usize,
}

impl Default for RuleLimits {
    fn default() -> Self {
        RuleLimits { max_subsets: 1 << 12 }
    }
}

/// Drops steps whose (rule, outputs) already occurred.
pub(crate) fn dedup(steps: Vec<RewriteStep>) -> Vec<RewriteStep> {
    let mut seen = std::collections::HashSet::new();
    steps
        .into_iter()
        .filter(|s| seen.insert((s.rule, s.outputs.clone())))
        .collect()
}

/// All base facts that fire on `d`, cheapest first.
pub fn base_facts(d: &DimensionVector, limits: &RuleLimits) -> Vec<RewriteStep> {
    let _ = limits;
    [
        vacuous(d),
        trivially_sparse(d),
        sum_bound(d),
        points_base(d),
        length_four(d),
        two_n_subsum(d),
        size_table(d),
        balanced(d),
    ]
    .into_iter()
    .flatten()
    .collect()
}

/// The two-way reductions in search order, applied to `d` only.
pub fn iff_reductions(d: &DimensionVector, limits: &RuleLimits) -> Vec<RewriteStep> {
    let mut out = span_restriction(d, limits);
    out.extend(complementary_pair(d));
    out.extend(span_intersect(d));
    out.extend(repeated_pair(d));
    out.extend(largest_block(d));
    out.extend(excess_reduction(d));
    out.extend(intersection_swap(d, limits));
    out
}

/// Re-runs the rule named by `step` on its input and returns every step it
/// produces. Domination and complement are checked structurally elsewhere.
pub fn rerun(step: &RewriteStep, limits: &RuleLimits) -> Vec<RewriteStep> {
    let d = &step.input;
    let one = |s: Option<RewriteStep>| s.into_iter().collect::<Vec<_>>();
    match step.rule {
        RuleId::SumBound => one(sum_bound(d)),
        RuleId::SpanRestriction => span_restriction(d, limits),
        RuleId::Merge => merge_pair(d),
        RuleId::TwoNSubsum => one(two_n_subsum(d)),
        RuleId::RepeatedPair => repeated_pair(d),
        RuleId::LargestBlock => largest_block(d),
        RuleId::ComplementaryPair => complementary_pair(d),
        RuleId::SpanIntersect => span_intersect(d),
        RuleId::IntersectionSwap => intersection_swap(d, limits),
        RuleId::LengthFour => one(length_four(d)),
        RuleId::PointsBase => one(points_base(d)),
        RuleId::SizeTable => one(size_table(d)),
        RuleId::Balanced => one(balanced(d)),
        RuleId::Excess => one(excess_reduction(d)),
        RuleId::Complement => vec![complement_step(d)],
        RuleId::TriviallySparse => one(trivially_sparse(d)),
        RuleId::Vacuous => one(vacuous(d)),
        RuleId::Domination => Vec::new(),
    }
}

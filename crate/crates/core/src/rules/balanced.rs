//! Vectors whose entries differ pairwise by at most 2.

use std::collections::{HashSet, VecDeque};

use super::reductions::span_intersect;
use super::{Params, RewriteStep, RuleId, Side};
use crate::vector::DimensionVector;

fn fixed_exceptions() -> [DimensionVector; 3] {
    [
        DimensionVector::from_powers(&[(1, 3), (3, 2)], 4).expect("literal"),
        DimensionVector::from_powers(&[(1, 4), (3, 1)], 5).expect("literal"),
        DimensionVector::from_powers(&[(1, 3), (3, 2)], 5).expect("literal"),
    ]
}

/// `(1^2, 2^2, 3^c; 3c + 3)` for some `c >= 0`.
fn in_family(d: &DimensionVector) -> bool {
    let n = d.ambient();
    if n % 3 != 0 {
        return false;
    }
    let c = n / 3 - 1;
    d.multiplicity(1) == 2
        && d.multiplicity(2) == 2
        && d.multiplicity(3) == c as usize
        && d.len() == 4 + c as usize
}

fn is_exception(d: &DimensionVector) -> bool {
    let c = d.complement();
    in_family(d) || in_family(&c) || fixed_exceptions().iter().any(|e| e == d || *e == c)
}

/// Searches the closure of `d` under the span-intersect reduction and
/// complement for one of the known sparse exceptions.
pub fn balanced_exception(d: &DimensionVector) -> Option<DimensionVector> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    queue.push_back(d.canonical());
    seen.insert(d.canonical());
    while let Some(v) = queue.pop_front() {
        if is_exception(&v) {
            return Some(v);
        }
        for side in [v.clone(), v.complement()] {
            for step in span_intersect(&side) {
                let o = step.outputs[0].canonical();
                if !o.is_vacuous() && seen.insert(o.clone()) {
                    queue.push_back(o);
                }
            }
        }
    }
    None
}

/// Entries within a window of width 2. Sparse when trivially sparse, when
/// four entries sum to 2n, or when the vector reduces to a known exception.
/// Otherwise dense for width at most 1; for width exactly 2 the rule is
/// silent, since that dense conclusion has counterexamples.
pub fn balanced(d: &DimensionVector) -> Option<RewriteStep> {
    if d.is_vacuous() || d.size() - d.min_entry() > 2 {
        return None;
    }
    let fact = |dense: bool, clause: String| {
        Some(RewriteStep::base(
            RuleId::Balanced,
            dense,
            Params::Fact {
                side: Side::Direct,
                clause,
            },
            d,
        ))
    };
    if d.is_trivially_sparse() {
        return fact(false, "dimension count fails".into());
    }
    let two_n = 2 * d.ambient() as u64;
    if d.len() == 4 && d.total() == two_n {
        return fact(false, "four entries summing to 2n".into());
    }
    if d.len() <= 4 {
        return fact(true, format!("length {}", d.len()));
    }
    if d.total() == two_n {
        return fact(false, "entries sum to 2n".into());
    }
    if let Some(e) = balanced_exception(d) {
        return fact(false, format!("reduces to {e}"));
    }
    if d.size() - d.min_entry() == 2 {
        // (1^5,3;6) and (1^4,3^2;8) are sparse without being trivially sparse
        return None;
    }
    fact(true, "not trivially sparse".into())
}

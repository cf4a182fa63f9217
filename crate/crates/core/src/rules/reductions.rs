//! Reductions: rules that transfer density between a vector and a smaller one.

use super::subsets::{expand, for_each_submultiset, remainder};
use super::{dedup, Direction, Params, RewriteStep, RuleId, RuleLimits, Side};
use crate::vector::DimensionVector;

fn build(raw: &[i64], ambient: u32) -> Option<DimensionVector> {
    if ambient == 0 {
        return None;
    }
    DimensionVector::reduce_signed(raw, ambient).ok()
}

fn widen(xs: &[u32]) -> Vec<i64> {
    xs.iter().map(|&x| x as i64).collect()
}

/// Distinct value pairs `(x, y)` with `x <= y` that can be drawn from `d`,
/// with the entries left over.
fn pairs(d: &DimensionVector) -> Vec<([u32; 2], Vec<u32>)> {
    let powers = d.powers();
    let mut out = Vec::new();
    for (i, &(x, mx)) in powers.iter().enumerate() {
        for &(y, _) in &powers[i..] {
            if x == y && mx < 2 {
                continue;
            }
            let rest = d.without(&[x, y]).expect("pair drawn from d");
            out.push(([x, y], rest));
        }
    }
    out
}

pub fn complement_step(d: &DimensionVector) -> RewriteStep {
    RewriteStep::reduce(
        RuleId::Complement,
        Direction::Iff,
        Params::None,
        d,
        d.complement(),
    )
}

/// Split into `A` summing to `n - k` and a nonempty rest `B` whose
/// complementary dimensions sum to at most `n - k`; restrict everything to
/// the span of `A`: `(A, b - k; n - k)`.
pub fn span_restriction(d: &DimensionVector, limits: &RuleLimits) -> Vec<RewriteStep> {
    let n = d.ambient() as u64;
    if d.len() < 2 || n < 2 {
        return Vec::new();
    }
    let powers = d.powers();
    let mut out = Vec::new();
    for_each_submultiset(&powers, 1, n - 1, limits.max_subsets, |counts| {
        let kept = expand(&powers, counts);
        let rest = remainder(&powers, counts);
        if rest.is_empty() {
            return;
        }
        let span: u64 = kept.iter().map(|&a| a as u64).sum();
        let co: u64 = rest.iter().map(|&b| n - b as u64).sum();
        if co > span {
            return;
        }
        let k = (n - span) as u32;
        let mut raw = widen(&kept);
        raw.extend(rest.iter().map(|&b| b as i64 - k as i64));
        if let Some(o) = build(&raw, span as u32) {
            out.push(RewriteStep::reduce(
                RuleId::SpanRestriction,
                Direction::Iff,
                Params::Split { kept, k },
                d,
                o,
            ));
        }
    });
    dedup(out)
}

/// Replaces one pair of entries by their sum (at most n). Sparse output
/// implies sparse input.
pub fn merge_pair(d: &DimensionVector) -> Vec<RewriteStep> {
    let n = d.ambient();
    let mut out = Vec::new();
    for ([x, y], mut rest) in pairs(d) {
        if x + y > n {
            continue;
        }
        rest.push(x + y);
        if let Ok(o) = DimensionVector::reduce(&rest, n) {
            out.push(RewriteStep::reduce(
                RuleId::Merge,
                Direction::SparseIf,
                Params::Merge { pair: [x, y] },
                d,
                o,
            ));
        }
    }
    dedup(out)
}

/// `(A, b, b; n)` with `b + sum(A) = n` and `2b <= n` reduces to
/// `(A, b; n - b)`.
pub fn repeated_pair(d: &DimensionVector) -> Vec<RewriteStep> {
    let n = d.ambient() as i64;
    let b = d.total() as i64 - n;
    if b < 1 || 2 * b > n || d.multiplicity(b as u32) < 2 {
        return Vec::new();
    }
    let b = b as u32;
    let rest = d.without(&[b]).expect("b occurs twice");
    match build(&widen(&rest), (n - b as i64) as u32) {
        Some(o) => vec![RewriteStep::reduce(
            RuleId::RepeatedPair,
            Direction::Iff,
            Params::Repeated { b },
            d,
            o,
        )],
        None => Vec::new(),
    }
}

/// `(A, b; n)` with `b` the largest entry, `sum(A) = n` and `a + b <= n`
/// reduces to `(A; b)`.
pub fn largest_block(d: &DimensionVector) -> Vec<RewriteStep> {
    let n = d.ambient() as u64;
    let b = d.size();
    if d.len() < 2 || d.total() - b as u64 != n {
        return Vec::new();
    }
    let rest = d.without(&[b]).expect("b is an entry");
    if rest.iter().any(|&a| (a + b) as u64 > n) {
        return Vec::new();
    }
    match build(&widen(&rest), b) {
        Some(o) => vec![RewriteStep::reduce(
            RuleId::LargestBlock,
            Direction::Iff,
            Params::Largest { b },
            d,
            o,
        )],
        None => Vec::new(),
    }
}

/// A pair `b1 + b2 = n` with the rest spanning codimension `k <= b1, b2`
/// reduces to `(A, b1 - k, b2 - k; n - k)`.
pub fn complementary_pair(d: &DimensionVector) -> Vec<RewriteStep> {
    let n = d.ambient() as i64;
    let k = 2 * n - d.total() as i64;
    let mut out = Vec::new();
    if k < 1 {
        return out;
    }
    for ([b1, b2], rest) in pairs(d) {
        if (b1 + b2) as i64 != n || k > b1.min(b2) as i64 {
            continue;
        }
        let mut raw = widen(&rest);
        raw.push(b1 as i64 - k);
        raw.push(b2 as i64 - k);
        if let Some(o) = build(&raw, (n - k) as u32) {
            out.push(RewriteStep::reduce(
                RuleId::ComplementaryPair,
                Direction::Iff,
                Params::Pair {
                    pair: [b1, b2],
                    k: k as u32,
                },
                d,
                o,
            ));
        }
    }
    dedup(out)
}

/// A pair with `b1 + b2 < n` and the rest spanning codimension `k <= b1, b2`
/// reduces to `(A, b1, b2; m)` with `m = b1 + b2 - k`, provided every entry
/// of `A` fits in dimension `m`.
pub fn span_intersect(d: &DimensionVector) -> Vec<RewriteStep> {
    let n = d.ambient() as i64;
    let total = d.total() as i64;
    let mut out = Vec::new();
    for ([b1, b2], rest) in pairs(d) {
        let (x, y) = (b1 as i64, b2 as i64);
        if x + y >= n {
            continue;
        }
        let k = n + x + y - total;
        if k < 1 || k > x.min(y) {
            continue;
        }
        let m = x + y - k;
        if rest.iter().any(|&a| a as i64 > m) {
            continue;
        }
        let mut raw = widen(&rest);
        raw.push(x);
        raw.push(y);
        if let Some(o) = build(&raw, m as u32) {
            out.push(RewriteStep::reduce(
                RuleId::SpanIntersect,
                Direction::Iff,
                Params::PairSpan {
                    pair: [b1, b2],
                    k: k as u32,
                    m: m as u32,
                },
                d,
                o,
            ));
        }
    }
    dedup(out)
}

/// A sub-multiset `S` of at least three entries with `sum(S) = (|S| - 1) n`
/// is swapped for the pairwise intersections: each `a` in `S` becomes
/// `n - a`. Equivalently `S` is a set of entries whose complementary
/// dimensions sum to exactly `n`.
pub fn intersection_swap(d: &DimensionVector, limits: &RuleLimits) -> Vec<RewriteStep> {
    let n = d.ambient();
    if d.len() < 3 {
        return Vec::new();
    }
    let co = d.complement();
    let powers = co.powers();
    let mut out = Vec::new();
    for_each_submultiset(&powers, n as u64, n as u64, limits.max_subsets, |counts| {
        let picked = expand(&powers, counts);
        if picked.len() < 3 {
            return;
        }
        let subset: Vec<u32> = picked.iter().rev().map(|&c| n - c).collect();
        let mut raw = d.without(&subset).expect("subset drawn from d");
        raw.extend(picked.iter().copied());
        if let Ok(o) = DimensionVector::reduce(&raw, n) {
            if o != *d {
                out.push(RewriteStep::reduce(
                    RuleId::IntersectionSwap,
                    Direction::Iff,
                    Params::Swap { subset },
                    d,
                    o,
                ));
            }
        }
    });
    dedup(out)
}

/// Total `n + l + 1` with `1 <= l < size`: density matches
/// `(entries <= l; l + 1)`.
pub fn excess_reduction(d: &DimensionVector) -> Option<RewriteStep> {
    let e = d.excess();
    let l = e - 1;
    if l < 1 || l >= d.size() as i64 {
        return None;
    }
    let l = l as u32;
    let kept: Vec<u32> = d.dims().iter().copied().filter(|&x| x <= l).collect();
    let o = DimensionVector::reduce(&kept, l + 1).ok()?;
    Some(RewriteStep::reduce(
        RuleId::Excess,
        Direction::Iff,
        Params::Excess { l },
        d,
        o,
    ))
}

/// Finds a strictly dominated known-sparse vector. `known` holds vectors of
/// the same ambient dimension; each is tried as given and complemented.
/// The step's output is the dominated witness.
pub fn domination<'a>(
    d: &DimensionVector,
    known: impl IntoIterator<Item = &'a DimensionVector>,
) -> Option<RewriteStep> {
    let dc = d.complement();
    for e in known {
        if e.ambient() != d.ambient() {
            continue;
        }
        for (side, s) in [(Side::Direct, d), (Side::Complement, &dc)] {
            for w in [e.clone(), e.complement()] {
                if w.len() < s.len() && s.dominates(&w).unwrap_or(false) {
                    return Some(RewriteStep::reduce(
                        RuleId::Domination,
                        Direction::SparseIf,
                        Params::Dominates { side },
                        d,
                        w,
                    ));
                }
            }
        }
    }
    None
}

//! Classification of vectors whose entries are all at most 4.
//!
//! Up to excess `l` (the size) the verdict follows from the excess reduction
//! applied to the dense vectors of ambient dimension at most `l + 1`; beyond
//! that only finitely many vectors are dense and they are listed here.

use super::{Params, RewriteStep, RuleId, Side};
use crate::vector::DimensionVector;

/// Dense size-2 vectors with excess at least 3.
pub const SIZE2_TAIL: [&str; 5] = ["2^3;3", "1,2^3;3", "2^4;3", "1,2^3;4", "2^4;5"];

/// Dense size-3 vectors with excess at least 4, as published.
///
/// `(1,3^3;5)` has four entries summing to 2n and is sparse; the length-4
/// criterion runs first, so the entry is never consulted for it. The list
/// also omits `(2^2,3^2;4)` and `(3^4;7)` (four entries, dense) and
/// `(3^5;4)` (complement of five points in general position); each of those
/// is settled before the tail is reached.
pub const SIZE3_TAIL: [&str; 21] = [
    "2,3^2;4",
    "2^3,3;4",
    "1,2,3^2;4",
    "3^3;4",
    "1,3^3;4",
    "2,3^3;4",
    "3^4;4",
    "1,3^4;4",
    "2^3,3;5",
    "1,2,3^2;5",
    "3^3;5",
    "1,3^3;5",
    "2,3^3;5",
    "3^4;5",
    "1,3^3;6",
    "2^2,3^2;6",
    "2,3^3;6",
    "2,3^3;7",
    "3^4;8",
    "1,3^4;9",
    "3^5;11",
];

/// Dense size-4 vectors with at least five entries and excess at least 5,
/// ambient dimension at most 7.
pub const SIZE4_TAIL_DENSE: [&str; 7] = [
    "1,2^2,4^2;5",
    "1^2,3^2,4;5",
    "1,3,4^3;5",
    "1,4^4;5",
    "1,4^5;5",
    "4^6;5",
    "1^2,4^3;6",
];

fn listed(list: &[&str], d: &DimensionVector) -> bool {
    let c = d.complement();
    list.iter().any(|s| {
        let v: DimensionVector = s.parse().expect("table literal");
        v == *d || v == c
    })
}

/// Verdict from the small-size classification, or `None` when the table
/// does not cover `d`: more than four entries are required (shorter vectors
/// are left to the length-4 criterion), the smaller of `d` and its
/// complement must have size at most 4, and the size-4 tail is only
/// tabulated up to ambient dimension 7 (excluding five entries in dimension
/// 7, which need a reduction).
pub fn size_table(d: &DimensionVector) -> Option<RewriteStep> {
    if d.is_vacuous() || d.len() <= 4 {
        return None;
    }
    let c = d.complement();
    let (side, s) = if c.size() < d.size() {
        (Side::Complement, c)
    } else {
        (Side::Direct, d.clone())
    };
    let l = s.size();
    if l > 4 {
        return None;
    }
    let n = s.ambient() as u64;
    let e = s.excess();
    let a = s.multiplicity(1);
    let b = s.multiplicity(2);
    let c3 = s.multiplicity(3);
    let (dense, clause) = if l == 1 {
        let r = s.len() as u64;
        (r <= n + 1, format!("{r} points, n = {n}"))
    } else if e <= 1 {
        (true, format!("excess {e} <= 1"))
    } else if e == 2 {
        (a <= 3, format!("excess 2 with {a} ones"))
    } else if e == 3 && l >= 3 {
        (
            a + b <= 4 && (a, b) != (2, 2),
            format!("excess 3 with (a, b) = ({a}, {b})"),
        )
    } else if e == 4 && l == 4 {
        let abc = a + b + c3;
        let dense = abc <= 3
            || (abc == 4 && a + 2 * b + 3 * c3 != 8)
            || (a + c3 == 5 && b == 0 && (a <= 1 || c3 <= 1));
        (dense, format!("excess 4 with (a, b, c) = ({a}, {b}, {c3})"))
    } else {
        let hit = match l {
            2 => listed(&SIZE2_TAIL, &s),
            3 => listed(&SIZE3_TAIL, &s),
            _ => {
                if n >= 8 || (n == 7 && s.len() == 5) {
                    return None;
                }
                listed(&SIZE4_TAIL_DENSE, &s)
            }
        };
        let clause = if hit {
            format!("listed dense vector of size {l}")
        } else {
            format!("excess {e} beyond the size-{l} list")
        };
        (hit, clause)
    };
    Some(RewriteStep::base(
        RuleId::SizeTable,
        dense,
        Params::Fact { side, clause },
        d,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::Direction;
    use crate::vector::dv;

    fn dir(s: &str) -> Option<Direction> {
        size_table(&dv(s)).map(|s| s.direction)
    }

    #[test]
    fn table_literals_parse() {
        for s in SIZE2_TAIL.iter().chain(&SIZE3_TAIL).chain(&SIZE4_TAIL_DENSE) {
            let _ = dv(s);
        }
    }

    #[test]
    fn published_examples() {
        assert_eq!(dir("1,1,1,2,2;7"), Some(Direction::BaseDense));
        assert_eq!(dir("1^4,2^2;6"), Some(Direction::BaseSparse));
        assert_eq!(dir("3^5;11"), Some(Direction::BaseDense));
        assert_eq!(dir("1^2,3^3;7"), Some(Direction::BaseSparse));
    }

    #[test]
    fn short_and_uncovered_vectors_are_deferred() {
        assert_eq!(dir("1,3^3;5"), None);
        assert_eq!(dir("1,5,5,5,5;6"), None);
        assert_eq!(dir("1,2,3,4,4,4;9"), None);
    }
}

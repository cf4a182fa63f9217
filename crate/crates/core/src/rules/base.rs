//! Base facts: rules that settle a vector without reducing it.

use super::subsets::subset_with_sum;
use super::{Params, RewriteStep, RuleId, Side};
use crate::vector::DimensionVector;

fn fact(side: Side, clause: impl Into<String>) -> Params {
    Params::Fact {
        side,
        clause: clause.into(),
    }
}

/// A vector with no proper nonzero entries is dense.
pub fn vacuous(d: &DimensionVector) -> Option<RewriteStep> {
    d.is_vacuous().then(|| {
        RewriteStep::base(
            RuleId::Vacuous,
            true,
            fact(Side::Direct, "no proper subspaces"),
            d,
        )
    })
}

/// Orbit space larger than the group.
pub fn trivially_sparse(d: &DimensionVector) -> Option<RewriteStep> {
    d.is_trivially_sparse().then(|| {
        let n = d.ambient() as i64;
        RewriteStep::base(
            RuleId::TriviallySparse,
            false,
            fact(
                Side::Direct,
                format!("orbit space dimension {} > {}", d.orbit_space_dim(), n * n - 1),
            ),
            d,
        )
    })
}

/// Dense when the entries (or the complementary entries) sum to at most n+1.
pub fn sum_bound(d: &DimensionVector) -> Option<RewriteStep> {
    if d.is_vacuous() {
        return None;
    }
    let bound = d.ambient() as u64 + 1;
    [Side::Direct, Side::Complement].into_iter().find_map(|side| {
        let s = side.apply(d);
        (s.total() <= bound).then(|| {
            RewriteStep::base(
                RuleId::SumBound,
                true,
                fact(side, format!("sum {} <= n+1", s.total())),
                d,
            )
        })
    })
}

/// `(1^r; n)` is dense iff `r <= n+1`; `(1^n, n-1; n)` is dense.
/// Both checked up to complement.
pub fn points_base(d: &DimensionVector) -> Option<RewriteStep> {
    if d.is_vacuous() {
        return None;
    }
    let n = d.ambient();
    for side in [Side::Direct, Side::Complement] {
        let s = side.apply(d);
        let r = s.multiplicity(1);
        if r == s.len() {
            let dense = r as u64 <= n as u64 + 1;
            let clause = if dense {
                format!("{r} points <= n+1")
            } else {
                format!("{r} points > n+1")
            };
            return Some(RewriteStep::base(
                RuleId::PointsBase,
                dense,
                fact(side, clause),
                d,
            ));
        }
        if n >= 3 && r == n as usize && s.len() == r + 1 && s.size() == n - 1 {
            return Some(RewriteStep::base(
                RuleId::PointsBase,
                true,
                fact(side, "n points and a hyperplane"),
                d,
            ));
        }
    }
    None
}

/// At most four subspaces: sparse iff exactly four with total 2n.
pub fn length_four(d: &DimensionVector) -> Option<RewriteStep> {
    if d.is_vacuous() || d.len() > 4 {
        return None;
    }
    let two_n = 2 * d.ambient() as u64;
    let sparse = d.len() == 4 && d.total() == two_n;
    let clause = if sparse {
        format!("sum {} = 2n", d.total())
    } else if d.len() == 4 {
        format!("sum {} != 2n", d.total())
    } else {
        format!("length {}", d.len())
    };
    Some(RewriteStep::base(
        RuleId::LengthFour,
        !sparse,
        fact(Side::Direct, clause),
        d,
    ))
}

/// Sparse when at least four entries (of `d` or of its complement) sum to
/// exactly 2n: merging them into four groups gives a sparse length-four
/// vector. Three entries summing to 2n prove nothing, e.g. `(4^3;6)` is dense.
pub fn two_n_subsum(d: &DimensionVector) -> Option<RewriteStep> {
    let two_n = 2 * d.ambient() as u64;
    [Side::Direct, Side::Complement].into_iter().find_map(|side| {
        let s = side.apply(d);
        if s.total() < two_n {
            return None;
        }
        subset_with_sum(s.dims(), two_n, 4).map(|subset| {
            RewriteStep::base(RuleId::TwoNSubsum, false, Params::Subset { side, subset }, d)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::Direction;
    use crate::vector::dv;

    fn verdict(s: Option<RewriteStep>) -> Option<Direction> {
        s.map(|s| s.direction)
    }

    #[test]
    fn sum_bound_examples() {
        assert_eq!(verdict(sum_bound(&dv("1,1,1;2"))), Some(Direction::BaseDense));
        assert_eq!(sum_bound(&dv("1,1,2,2;3")), None);
        let s = sum_bound(&dv("3,3,3,3;4")).unwrap();
        assert!(matches!(
            s.params,
            Params::Fact {
                side: Side::Complement,
                ..
            }
        ));
    }

    #[test]
    fn two_n_subsum_examples() {
        let s = two_n_subsum(&dv("1,1,3,3,4;6")).unwrap();
        assert_eq!(s.direction, Direction::BaseSparse);
        let s = two_n_subsum(&dv("3,3,4,4,4;6")).unwrap();
        match s.params {
            Params::Subset { side, subset } => {
                assert_eq!(side, Side::Complement);
                assert_eq!(subset.iter().sum::<u32>(), 12);
            }
            other => panic!("unexpected params {other:?}"),
        }
        assert_eq!(two_n_subsum(&dv("1,1,1;2")), None);
        assert_eq!(two_n_subsum(&dv("4,4,4;6")), None);
        assert_eq!(two_n_subsum(&dv("1,1,1,2,3;6")), None);
    }

    #[test]
    fn length_four_examples() {
        assert_eq!(verdict(length_four(&dv("1,1,2,2;3"))), Some(Direction::BaseSparse));
        assert_eq!(verdict(length_four(&dv("2,2,2,2;5"))), Some(Direction::BaseDense));
        assert_eq!(verdict(length_four(&dv("2,2,2;4"))), Some(Direction::BaseDense));
        assert_eq!(length_four(&dv("1^5;9")), None);
    }

    #[test]
    fn points_examples() {
        assert_eq!(verdict(points_base(&dv("1^4;3"))), Some(Direction::BaseDense));
        assert_eq!(verdict(points_base(&dv("1^5;3"))), Some(Direction::BaseSparse));
        assert_eq!(verdict(points_base(&dv("1^5,4;5"))), Some(Direction::BaseDense));
        assert_eq!(verdict(points_base(&dv("1,4^5;5"))), Some(Direction::BaseDense));
        assert_eq!(points_base(&dv("1,2;5")), None);
    }

    #[test]
    fn trivial_and_vacuous() {
        assert!(trivially_sparse(&dv("1^5;3")).is_some());
        assert!(trivially_sparse(&dv("1^4;3")).is_none());
        assert!(vacuous(&DimensionVector::vacuous(3)).is_some());
        assert!(vacuous(&dv("1;3")).is_none());
    }
}

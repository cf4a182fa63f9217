//! Every rule application on small vectors is checked against the oracle.

use std::collections::HashMap;

use grassdense::rules::{self, Direction, RuleId, RuleLimits};
use grassdense::{enumerate_vectors, oracle_decide, DimensionVector, OracleClass, OracleConfig};

struct Oracle(HashMap<DimensionVector, bool>);

impl Oracle {
    fn dense(&mut self, v: &DimensionVector) -> bool {
        if v.is_vacuous() {
            return true;
        }
        if let Some(&b) = self.0.get(v) {
            return b;
        }
        let cfg = OracleConfig {
            samples: 3,
            seed: 11,
            stop_at_witness: true,
            ..OracleConfig::default()
        };
        let b = oracle_decide(v, &cfg).unwrap().class == OracleClass::CertifiedDense;
        self.0.insert(v.clone(), b);
        b
    }
}

#[test]
fn every_rule_is_sound_up_to_dimension_eight() {
    let limits = RuleLimits::default();
    let mut oracle = Oracle(HashMap::new());
    let mut failures = Vec::new();
    let mut fired: HashMap<RuleId, usize> = HashMap::new();
    for v in enumerate_vectors(8, 9, 8) {
        let here = oracle.dense(&v);
        let mut steps = rules::base_facts(&v, &limits);
        steps.extend(rules::iff_reductions(&v, &limits));
        steps.extend(rules::merge_pair(&v));
        for s in steps {
            *fired.entry(s.rule).or_default() += 1;
            let ok = match s.direction {
                Direction::BaseDense => here,
                Direction::BaseSparse => !here,
                Direction::Iff => oracle.dense(&s.outputs[0]) == here,
                Direction::SparseIf => oracle.dense(&s.outputs[0]) || !here,
                Direction::DenseIf => !oracle.dense(&s.outputs[0]) || here,
            };
            if !ok {
                failures.push(s.summary());
            }
        }
    }
    assert!(failures.is_empty(), "{} unsound steps: {:?}", failures.len(), &failures[..failures.len().min(10)]);
    for r in [
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
        RuleId::TriviallySparse,
    ] {
        assert!(fired.get(&r).copied().unwrap_or(0) > 0, "{r:?} never fired");
    }
}

#[test]
fn reductions_shrink_or_swap() {
    let limits = RuleLimits::default();
    for v in enumerate_vectors(9, 10, 9) {
        for s in rules::iff_reductions(&v, &limits) {
            let o = &s.outputs[0];
            if s.rule == RuleId::IntersectionSwap {
                assert_eq!(o.ambient(), v.ambient(), "{}", s.summary());
                assert_ne!(*o, v, "{}", s.summary());
            } else {
                assert!(o.ambient() < v.ambient(), "{}", s.summary());
            }
        }
    }
}

#[test]
fn rules_are_pure() {
    let limits = RuleLimits::default();
    for v in enumerate_vectors(7, 8, 7) {
        assert_eq!(rules::base_facts(&v, &limits), rules::base_facts(&v, &limits));
        assert_eq!(rules::iff_reductions(&v, &limits), rules::iff_reductions(&v, &limits));
        assert_eq!(rules::merge_pair(&v), rules::merge_pair(&v));
    }
}

#[test]
fn pair_reductions_preserve_trivial_sparsity() {
    for v in enumerate_vectors(10, 11, 10) {
        let steps = rules::complementary_pair(&v)
            .into_iter()
            .chain(rules::span_intersect(&v));
        for s in steps {
            assert_eq!(
                s.outputs[0].is_trivially_sparse(),
                v.is_trivially_sparse(),
                "{}",
                s.summary()
            );
        }
    }
}

use proptest::prelude::*;

use grassdense::engine::{Engine, DEFAULT_BUDGET};
use grassdense::{enumerate_vectors, verify_certificate, DimensionVector, Status};

#[test]
fn complement_gets_the_same_verdict() {
    let engine = Engine::default();
    for v in enumerate_vectors(8, 9, 8) {
        let a = engine.decide(&v).verdict.status;
        let b = engine.decide(&v.complement()).verdict.status;
        assert_eq!(a, b, "{v}");
    }
}

#[test]
fn every_small_vector_is_decided_with_a_valid_certificate() {
    let engine = Engine::default();
    for v in enumerate_vectors(8, 9, 8) {
        let r = engine.decide(&v);
        assert_ne!(r.verdict.status, Status::Unknown, "{v}");
        assert!(r.nodes_explored <= DEFAULT_BUDGET);
        let c = r.verdict.certificate.expect("decided vectors carry a certificate");
        assert_eq!(c.claim, r.verdict.status);
        assert_eq!(verify_certificate(&c), Ok(true), "{v}");
    }
}

fn small_vector() -> impl Strategy<Value = DimensionVector> {
    (2u32..=9).prop_flat_map(|n| {
        prop::collection::vec(1..n, 1..=(n as usize + 1))
            .prop_map(move |dims| DimensionVector::normalize(&dims, n).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn batch_order_does_not_matter(batch in prop::collection::vec(small_vector(), 1..12), seed in any::<u64>()) {
        let forward = Engine::default();
        let a: Vec<Status> = batch.iter().map(|v| forward.decide(v).verdict.status).collect();
        let mut order: Vec<usize> = (0..batch.len()).collect();
        let k = (seed as usize) % order.len();
        order.rotate_left(k);
        order.reverse();
        let shuffled = Engine::default();
        let mut b = vec![Status::Unknown; batch.len()];
        for i in order {
            b[i] = shuffled.decide(&batch[i]).verdict.status;
        }
        prop_assert_eq!(a, b);
    }

    #[test]
    fn budget_is_respected(v in small_vector(), budget in 1u64..50) {
        let r = Engine::with_budget(budget).decide(&v);
        prop_assert!(r.nodes_explored <= budget);
        if r.verdict.status != Status::Unknown {
            prop_assert_eq!(verify_certificate(r.verdict.certificate.as_ref().unwrap()), Ok(true));
        }
    }

    #[test]
    fn decisions_are_deterministic(v in small_vector()) {
        let a = Engine::default().decide(&v);
        let b = Engine::default().decide(&v);
        prop_assert_eq!(a, b);
    }
}

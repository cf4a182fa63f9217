use std::path::PathBuf;

use grassdense::families::{
    classify_size, enumerate_vectors, fibonacci_family, repeat_family, DecisionBackend,
    EngineBackend, SizeClassification,
};
use grassdense::{oracle_decide, DimensionVector, OracleClass, OracleConfig, Status};

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn backend() -> EngineBackend {
    EngineBackend::new(Some(OracleConfig::default()))
}

/// Decides by sampling only.
struct OracleOnly;

impl DecisionBackend for OracleOnly {
    fn decide(&self, d: &DimensionVector) -> Status {
        let cfg = OracleConfig {
            samples: 4,
            seed: 21,
            stop_at_witness: true,
            ..OracleConfig::default()
        };
        match oracle_decide(d, &cfg).unwrap().class {
            OracleClass::CertifiedDense => Status::Dense,
            OracleClass::MonteCarloSparse => Status::Sparse,
        }
    }
}

/// Density predicted by a classification for a vector of that size.
fn predicted(c: &SizeClassification, v: &DimensionVector) -> bool {
    let e = v.excess();
    if e <= 1 {
        return true;
    }
    if e <= c.size as i64 {
        let e = e as u32;
        let below: Vec<u32> = v.dims().iter().copied().filter(|&x| x < e).collect();
        let key = DimensionVector::reduce(&below, e).unwrap();
        let rule = c.infinite_families.iter().find(|f| f.excess == e as i64).unwrap();
        return rule.dense_targets.contains(&key);
    }
    c.exceptional_dense.contains(v)
}

#[test]
fn reports_match_golden_files() {
    for l in 1..=4 {
        let c = classify_size(l, &backend()).unwrap();
        assert!(c.unresolved.is_empty());
        assert_eq!(c.to_text(), golden(&format!("classify_size{l}.txt")), "size {l}");
    }
}

#[test]
fn oracle_alone_gives_the_same_classification() {
    for l in 1..=4 {
        let a = classify_size(l, &backend()).unwrap();
        let b = classify_size(l, &OracleOnly).unwrap();
        assert_eq!(a, b, "size {l}");
    }
}

#[test]
fn classification_matches_brute_force_up_to_dimension_twelve() {
    let b = backend();
    for l in 1..=4u32 {
        let c = classify_size(l, &b).unwrap();
        let mut checked = 0;
        for v in enumerate_vectors(12, 13, l).filter(|v| v.size() == l) {
            let dense = b.decide(&v) == Status::Dense;
            assert_eq!(predicted(&c, &v), dense, "size {l}: {v}");
            checked += 1;
        }
        assert!(checked > 0);
    }
}

#[test]
fn classification_json_roundtrips() {
    let c = classify_size(3, &backend()).unwrap();
    let s = serde_json::to_string(&c).unwrap();
    assert_eq!(serde_json::from_str::<SizeClassification>(&s).unwrap(), c);
}

#[test]
fn family_members_are_certified_dense() {
    let cfg = OracleConfig {
        stop_at_witness: true,
        ..OracleConfig::default()
    };
    let mut members = fibonacci_family(&"1,1,1;2".parse().unwrap(), 3).unwrap();
    members.extend(fibonacci_family(&"1,1,1,1;3".parse().unwrap(), 2).unwrap());
    members.extend(repeat_family(&"1,1,1,2;3".parse().unwrap(), 6).unwrap());
    members.extend(repeat_family(&"1,1,2,2;4".parse().unwrap(), 6).unwrap());
    for v in members.iter().filter(|v| v.ambient() <= 14) {
        assert_eq!(oracle_decide(v, &cfg).unwrap().class, OracleClass::CertifiedDense, "{v}");
    }
}

use proptest::prelude::*;

use grassdense::oracle::{
    oracle_decide, sample_configuration, stabilizer_dim, stabilizer_nullity, Mode, OracleClass,
    OracleConfig,
};
use grassdense::{enumerate_vectors, DimensionVector};

const P: u64 = 4_611_686_018_427_387_847;

fn small_vector(max_n: u32) -> impl Strategy<Value = DimensionVector> {
    (2u32..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1..n, 1..=(n as usize + 1))
            .prop_map(move |dims| DimensionVector::normalize(&dims, n).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stabilizer_is_at_least_expected(v in small_vector(7), seed in any::<u64>()) {
        for prime in [Some(P), None] {
            let c = sample_configuration(&v, prime, seed).unwrap();
            let nullity = stabilizer_nullity(&c).unwrap();
            prop_assert!(nullity >= 1);
            prop_assert!(nullity as i64 - 1 >= v.expected_stab_dim().max(0));
        }
    }

    #[test]
    fn nullity_ignores_the_choice_of_basis(v in small_vector(7), seed in any::<u64>()) {
        for prime in [Some(P), None] {
            let c = sample_configuration(&v, prime, seed).unwrap();
            let s = c.scramble(seed ^ 0x5555);
            prop_assert_eq!(stabilizer_nullity(&c).unwrap(), stabilizer_nullity(&s).unwrap());
        }
    }

    #[test]
    fn system_has_one_row_per_orbit_coordinate(v in small_vector(9), seed in any::<u64>()) {
        let c = sample_configuration(&v, Some(P), seed).unwrap();
        let n = v.ambient() as usize;
        prop_assert_eq!(c.system_shape(), (v.orbit_space_dim() as usize, n * n));
    }
}

#[test]
fn once_a_sample_attains_the_minimum_all_do() {
    let mut artifacts = Vec::new();
    for v in ["1^2,2^2;3", "2^3;4", "1^4,3;5", "1^3,2,3;5", "2,3^3;6", "1^2,3^3;7", "3^5;11"] {
        let v: DimensionVector = v.parse().unwrap();
        let cfg = OracleConfig {
            samples: 20,
            prime_count: 4,
            seed: 3,
            ..OracleConfig::default()
        };
        let r = oracle_decide(&v, &cfg).unwrap();
        if r.class == OracleClass::CertifiedDense && r.anomalies > 0 {
            artifacts.push((v.to_string(), r.anomalies));
        }
    }
    assert!(artifacts.is_empty(), "prime artifacts: {artifacts:?}");
}

#[test]
fn modular_and_rational_agree_up_to_dimension_six() {
    for v in enumerate_vectors(6, 7, 5) {
        if v.is_trivially_sparse() {
            continue;
        }
        let modular = oracle_decide(
            &v,
            &OracleConfig {
                samples: 3,
                stop_at_witness: true,
                seed: 1,
                ..OracleConfig::default()
            },
        )
        .unwrap();
        let rational = oracle_decide(
            &v,
            &OracleConfig {
                samples: 3,
                stop_at_witness: true,
                seed: 1,
                mode: Mode::Rational,
                ..OracleConfig::default()
            },
        )
        .unwrap();
        assert_eq!(modular.class, rational.class, "{v}");
        assert_eq!(modular.stab_dim, rational.stab_dim, "{v}");
    }
}

#[test]
fn stabilizer_of_points_in_general_position() {
    // n + 1 points in P^{n-1} have a finite stabilizer
    for n in 2..=9u32 {
        let v = DimensionVector::from_powers(&[(1, n + 1)], n).unwrap();
        let c = sample_configuration(&v, Some(P), 5).unwrap();
        assert_eq!(stabilizer_dim(&c).unwrap(), 0, "{v}");
    }
}

//! Property tests over generated inputs, each checked against an independent
//! oracle or an invariance that must hold.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ptft_core::conv::q_mon_product;
use ptft_core::engine::BordismModel;
use ptft_core::fun::Key;
use ptft_core::models::catalog::{signature_of_form, signature_oracle};
use ptft_core::models::graph::GraphModel;
use ptft_core::models::multiset::{divisor_count_oracle, omega_poly_oracle, Multiset};
use ptft_core::models::polya::{orbit_count_oracle, polya_chain, PermGroup, FIELD_LIMIT};
use ptft_core::models::{divisor_instance, omega_coefficients, polya_instance};
use ptft_core::moncat::Mor;
use ptft_core::semiring::{sr_check_laws, Descriptor, Element};
use ptft_core::Error;

fn unit_pair() -> Key {
    Key::pair(Key::unit(), Key::unit())
}

fn symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |upper| {
        let mut m = vec![vec![0; n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i..n {
                let x = it.next().unwrap();
                m[i][j] = x;
                m[j][i] = x;
            }
        }
        m
    })
}

fn key() -> impl Strategy<Value = Key> {
    let leaf = prop_oneof![(-50i64..50).prop_map(Key::Int), "[a-z]{0,4}".prop_map(Key::Str)];
    leaf.prop_recursive(3, 12, 3, |inner| prop::collection::vec(inner, 0..3).prop_map(Key::Tuple))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_matches_the_sturm_oracle(m in (1usize..=6).prop_flat_map(symmetric)) {
        prop_assert_eq!(signature_of_form(&m).unwrap(), signature_oracle(&m).unwrap());
    }

    #[test]
    fn signature_is_invariant_under_simultaneous_permutation(
        m in (2usize..=6).prop_flat_map(symmetric),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| m[perm[i]][perm[j]]).collect()).collect();
        prop_assert_eq!(signature_of_form(&m).unwrap(), signature_of_form(&p).unwrap());
    }

    #[test]
    fn signature_is_additive_on_block_sums(a in (1usize..=4).prop_flat_map(symmetric), b in (1usize..=4).prop_flat_map(symmetric)) {
        let n = a.len() + b.len();
        let mut m = vec![vec![0; n]; n];
        for (i, row) in a.iter().enumerate() {
            m[i][..a.len()].copy_from_slice(row);
        }
        for (i, row) in b.iter().enumerate() {
            m[a.len() + i][a.len()..].copy_from_slice(row);
        }
        prop_assert_eq!(signature_of_form(&m).unwrap(), signature_of_form(&a).unwrap() + signature_of_form(&b).unwrap());
    }

    #[test]
    fn divisor_state_sums_count_divisors(n in 1u64..=100_000) {
        let tft = divisor_instance(false, Descriptor::NatInf).unwrap();
        let z = tft.state_sum(&Multiset::of(n).unwrap(), &unit_pair()).unwrap();
        prop_assert_eq!(z.value(&Mor::Star), Element::nat(divisor_count_oracle(n).unwrap()));
    }

    #[test]
    fn omega_state_sums_match_the_factorization_oracle(n in 1u64..=100_000) {
        let tft = divisor_instance(true, Descriptor::NatInf).unwrap();
        let z = tft.state_sum(&Multiset::of(n).unwrap(), &unit_pair()).unwrap();
        let desc = Descriptor::NatInf;
        let expected: Vec<serde_json::Value> = omega_poly_oracle(n).unwrap().into_iter().map(|c| desc.render(&Element::nat(c))).collect();
        prop_assert_eq!(omega_coefficients(&z), expected);
    }

    #[test]
    fn omega_state_sums_are_multiplicative_on_coprime_values(a in 1u64..=2000, b in 1u64..=2000) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        let tft = divisor_instance(true, Descriptor::NatInf).unwrap();
        let z = |n: u64| tft.state_sum(&Multiset::of(n).unwrap(), &unit_pair()).unwrap();
        prop_assert_eq!(z(a * b), q_mon_product(&z(a), &z(b)).unwrap());
    }

    #[test]
    fn keys_round_trip_through_json(k in key()) {
        prop_assert_eq!(Key::from_json(&k.to_json()).unwrap(), k);
    }

    #[test]
    fn scrambled_graphs_stay_isomorphic(seed in any::<u64>()) {
        let model = GraphModel::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = model.sample_bordism(&mut rng);
        let (w2, phi) = model.scramble(&w, &mut rng);
        let isos = model.homeomorphisms(&w, &w2).unwrap();
        prop_assert!(isos.contains(&phi));
    }

    #[test]
    fn semiring_laws_hold_for_any_seed(seed in any::<u64>(), which in 0usize..5) {
        let desc = [Descriptor::Boolean, Descriptor::NatInf, Descriptor::RatInf, Descriptor::Tropical, Descriptor::Arctic][which].clone();
        let report = sr_check_laws(&desc, 20, seed);
        prop_assert!(report.passed(), "{:?}", report.failing_laws());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn burnside_holds_for_generated_groups(
        degree in 2usize..=5,
        generators in prop::collection::vec(Just(()), 1..=2),
        seed in any::<u64>(),
        colors in 1usize..=3,
    ) {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Vec<usize>> = generators.iter().map(|_| {
            let mut p: Vec<usize> = (0..degree).collect();
            p.shuffle(&mut rng);
            p
        }).collect();
        let group = PermGroup::generated(degree, &gens).unwrap();
        let tft = polya_instance(group.clone(), Some(colors), Descriptor::NatInf).unwrap();
        if group.order() > FIELD_LIMIT {
            prop_assert!(matches!(polya_chain(&tft), Err(Error::TooLarge(_))));
            return Ok(());
        }
        let chain = polya_chain(&tft).unwrap();
        prop_assert!(chain.consistent(tft.descriptor()), "{}", chain.to_json());
        prop_assert_eq!(chain.orbit_count, orbit_count_oracle(&tft.model().universe));
        let total: usize = chain.orbit_count * group.order();
        prop_assert_eq!(chain.orbits_times_order, total.into());
    }
}

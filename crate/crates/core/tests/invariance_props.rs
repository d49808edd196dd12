use abtuple::property::{has_property_with, witness_is_valid, PropertyOptions, Search};
use abtuple::unimodular::random_unimodular;
use abtuple::{
    classify, generate, has_property, verify_classification, Classification, GeneratorSpec, GroupElement, GroupTuple,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tuple(max_q: usize, max_dim: usize, b: i64) -> impl Strategy<Value = GroupTuple> {
    (1..=max_dim, 1..=max_q).prop_flat_map(move |(dim, q)| {
        prop::collection::vec(prop::collection::vec(-b..=b, dim), q).prop_map(move |rows| {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            GroupTuple::from_i64s(&refs).unwrap()
        })
    })
}

fn with_rs() -> impl Strategy<Value = (GroupTuple, usize, usize)> {
    tuple(6, 3, 3).prop_filter("need two positions", |t| t.len() >= 2).prop_flat_map(|t| {
        let q = t.len();
        (Just(t), 2..=q).prop_flat_map(|(t, r)| (Just(t), Just(r), 1..r))
    })
}

fn shuffled(t: &GroupTuple, seed: u64) -> GroupTuple {
    let mut order: Vec<usize> = (1..=t.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    t.select(&order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn property_ignores_order((t, r, s) in with_rs(), seed in any::<u64>()) {
        let a = has_property(&t, r, s).unwrap();
        let b = has_property(&shuffled(&t, seed), r, s).unwrap();
        prop_assert_eq!(a.holds, b.holds);
    }

    #[test]
    fn property_ignores_translation((t, r, s) in with_rs(), c in prop::collection::vec(-5i64..=5, 3)) {
        let c = GroupElement::from_i64s(&c[..t.dim()]).unwrap();
        prop_assert_eq!(has_property(&t, r, s).unwrap().holds, has_property(&t.translate(&c).unwrap(), r, s).unwrap().holds);
    }

    #[test]
    fn property_and_rank_are_equivariant((t, r, s) in with_rs(), seed in any::<u64>()) {
        let u = random_unimodular(t.dim(), 5, &mut ChaCha8Rng::seed_from_u64(seed));
        let image = t.transform(&u).unwrap();
        prop_assert_eq!(has_property(&t, r, s).unwrap().holds, has_property(&image, r, s).unwrap().holds);
        prop_assert_eq!(t.rank(), image.rank());
    }

    #[test]
    fn search_strategies_agree((t, r, s) in with_rs(), parallel in any::<bool>()) {
        let reference = PropertyOptions { search: Search::Reference, parallel, ..Default::default() };
        let a = has_property_with(&t, r, s, &reference).unwrap();
        let b = has_property_with(&t, r, s, &PropertyOptions::default()).unwrap();
        prop_assert_eq!(&a, &b);
        if !a.holds {
            prop_assert!(witness_is_valid(&t, &a));
        }
    }

    #[test]
    fn span_survives_translation_by_a_value(t in tuple(6, 3, 3), pick in any::<prop::sample::Index>()) {
        let mut elements = t.elements().to_vec();
        elements.push(GroupElement::zero(t.dim()));
        let t = GroupTuple::new(elements).unwrap();
        let c = t.elements()[pick.index(t.len())].clone();
        prop_assert_eq!(t.span(), t.translate(&c).unwrap().span());
    }

    #[test]
    fn generated_kinds_are_exclusive(s in 2usize..=5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let breakpoints: Vec<usize> = (1..s).filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();
        let b_spec = GeneratorSpec { seed, unimodular_bound: 4, permutation_seed: Some(seed ^ 1), ..GeneratorSpec::type_b(s, breakpoints, s - 1) };
        let tb = generate(&b_spec).unwrap();
        let cb = classify(&tb, s).unwrap();
        prop_assert!(matches!(cb, Classification::TypeB { .. }), "{:?}", cb);
        prop_assert!(verify_classification(&tb, &cb));
        if s % 2 == 1 {
            let a_spec = GeneratorSpec { seed, unimodular_bound: 4, permutation_seed: Some(seed ^ 2), ..GeneratorSpec::type_a(s, s - 1) };
            let ta = generate(&a_spec).unwrap();
            let ca = classify(&ta, s).unwrap();
            prop_assert!(matches!(ca, Classification::TypeA { .. }), "{:?}", ca);
            prop_assert!(!verify_classification(&ta, &cb));
            prop_assert!(!verify_classification(&tb, &ca));
        }
    }
}

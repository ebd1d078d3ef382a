mod common;

use common::lattice;
use diamond_core::abelian::{
    aut_order, f_p, gaussian_subgroup_count, subgroup_lattice_size_rank2, GroupType, PPartition,
};
use diamond_core::formula::{dm, dm_multiprime, dm_rank2, DmConfig};
use diamond_core::oracle::{
    brute_force_aut_order, build_group, count_diamonds_with, section_census,
    section_census_by_duality, DiamondStrategy,
};
use diamond_core::Count;
use num_bigint::BigUint;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

/// Abelian p-groups of order at most `cap`.
fn p_group_up_to(cap: u64) -> impl Strategy<Value = PPartition> {
    (small_prime(), prop::collection::vec(1u32..=4, 1..=4)).prop_filter_map(
        "order too large",
        move |(p, exps)| {
            let part = PPartition::new(p, exps).ok()?;
            (part.order() <= BigUint::from(cap)).then_some(part)
        },
    )
}

/// Group types of order at most `cap`, possibly with several primes.
fn group_up_to(cap: u64) -> impl Strategy<Value = GroupType> {
    prop::collection::vec((small_prime(), 1u32..=3), 0..=5).prop_filter_map(
        "order too large",
        move |factors| {
            let t = GroupType::canonicalize(&factors).ok()?;
            (diamond_core::abelian::group_order(&t) <= BigUint::from(cap)).then_some(t)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dispatcher_matches_oracle(t in group_up_to(128)) {
        let formula = dm(&t, &DmConfig::default()).unwrap().value;
        let oracle = count_diamonds_with(&lattice(&t), DiamondStrategy::SectionMemo).unwrap();
        prop_assert_eq!(formula, oracle);
    }

    #[test]
    fn census_routes_agree(t in group_up_to(128)) {
        let lat = lattice(&t);
        prop_assert_eq!(section_census(&lat), section_census_by_duality(&lat).unwrap());
    }

    #[test]
    fn aut_formula_matches_brute_force(s in p_group_up_to(64)) {
        let g = build_group(&s.to_group_type(), 64).unwrap();
        prop_assert_eq!(brute_force_aut_order(&g).unwrap(), aut_order(&s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gaussian_symmetry(n in 0u32..=10, i in 0u32..=10, p in small_prime()) {
        prop_assume!(i <= n);
        prop_assert_eq!(
            gaussian_subgroup_count(n, i, p).unwrap(),
            gaussian_subgroup_count(n, n - i, p).unwrap()
        );
    }

    #[test]
    fn rank2_lattice_size_is_symmetric_polynomial_quotient(
        a1 in 0u32..=6, d in 0u32..=6, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
    ) {
        let a2 = a1 + d;
        let size = subgroup_lattice_size_rank2(a1, a2, p).unwrap();
        let q = Count::from(p - 1);
        prop_assert_eq!(size * &q * &q, f_p(a1, a2, p).unwrap());
    }

    #[test]
    fn rank2_dm_is_nonnegative_and_zero_only_for_cyclic(
        a1 in 0u32..=5, d in 0u32..=5, p in small_prime()
    ) {
        let v = dm_rank2(a1, a1 + d, p).unwrap();
        prop_assert_eq!(v == Count::from(0u32), a1 == 0);
    }

    #[test]
    fn multiprime_is_permutation_invariant(
        vals in prop::collection::vec((1u32..10_000, 1u32..10_000), 3)
    ) {
        let primes = [2u64, 3, 5];
        let t = GroupType::canonicalize(&[(2, 1), (3, 1), (5, 1)]).unwrap();
        let base = {
            let dms: BTreeMap<u64, Count> = primes.iter().zip(&vals).map(|(&p, v)| (p, v.0.into())).collect();
            let ls: BTreeMap<u64, Count> = primes.iter().zip(&vals).map(|(&p, v)| (p, v.1.into())).collect();
            dm_multiprime(&t, &dms, &ls).unwrap()
        };
        for perm in [[1usize, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]] {
            let dms: BTreeMap<u64, Count> = primes.iter().enumerate().map(|(i, &p)| (p, vals[perm[i]].0.into())).collect();
            let ls: BTreeMap<u64, Count> = primes.iter().enumerate().map(|(i, &p)| (p, vals[perm[i]].1.into())).collect();
            prop_assert_eq!(dm_multiprime(&t, &dms, &ls).unwrap(), base.clone());
        }
    }
}

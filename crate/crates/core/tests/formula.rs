mod common;

use common::{p_group, ty};
use diamond_core::abelian::{
    aut_order, subgroup_lattice_size_elementary, subgroup_lattice_size_rank2,
};
use diamond_core::formula::{
    dm, dm_elementary, dm_master_sum, dm_rank2, dm_rank2_shortcut, primary_diamond_count,
    ClosedFormCensus, DmConfig, Method, MethodPreference,
};
use diamond_core::primes::factorize;
use diamond_core::Count;
use num_traits::Zero;

#[test]
fn every_cyclic_group_up_to_a_million_is_diamond_free() {
    let config = DmConfig {
        preference: MethodPreference::Formula,
        ..Default::default()
    };
    for n in 1..=1_000_000u64 {
        let r = dm(&ty(&factorize(n)), &config).unwrap();
        assert!(r.value.is_zero(), "Z{n}");
        assert_ne!(r.method, Method::Oracle);
    }
}

#[test]
fn methods_agree_where_several_apply() {
    for p in [2u64, 3, 5, 7] {
        assert_eq!(dm_elementary(2, p).unwrap(), dm_rank2(1, 1, p).unwrap());
        assert_eq!(
            subgroup_lattice_size_elementary(2, p).unwrap(),
            subgroup_lattice_size_rank2(1, 1, p).unwrap()
        );
        for a2 in 1..=5 {
            for a1 in 1..=a2 {
                let closed = dm_rank2(a1, a2, p).unwrap();
                if let Some(v) = dm_rank2_shortcut(a1, a2, p) {
                    assert_eq!(v, closed, "p={p} ({a1},{a2})");
                }
                let g = p_group(p, &[a1, a2]);
                let part = g.as_p_group().unwrap();
                let census = ClosedFormCensus::new(part.clone()).unwrap();
                assert_eq!(
                    dm_master_sum(part, &census).unwrap(),
                    closed,
                    "p={p} ({a1},{a2})"
                );
            }
        }
        for n in 1..=5u32 {
            let g = p_group(p, &vec![1; n as usize]);
            let part = g.as_p_group().unwrap();
            let census = ClosedFormCensus::new(part.clone()).unwrap();
            assert_eq!(
                dm_master_sum(part, &census).unwrap(),
                dm_elementary(n, p).unwrap()
            );
        }
    }
}

#[test]
fn primary_ratio_is_exact() {
    for p in [2u64, 3, 5, 7] {
        for e in 1..=5 {
            for exps in diamond_core::abelian::partitions(e) {
                let s = diamond_core::abelian::PPartition::new(p, exps).unwrap();
                let num = aut_order(&s.doubled());
                let den = aut_order(&s) * 6u32;
                assert!((&num % &den).is_zero(), "{s}");
                assert_eq!(primary_diamond_count(&s), num / den);
            }
        }
    }
}

#[test]
fn large_inputs_stay_exact() {
    // far outside any oracle; checks only integrality and growth
    let big = dm_elementary(40, 2).unwrap();
    assert!(big > Count::from(u128::MAX));
    let r = dm_rank2(30, 60, 101).unwrap();
    assert!(r > Count::from(u128::MAX));
    let t = ty(&[
        (2, 1),
        (2, 1),
        (3, 5),
        (3, 9),
        (1_000_003, 1),
        (1_000_003, 2),
    ]);
    let v = dm(&t, &DmConfig::default()).unwrap();
    assert_eq!(v.method, Method::MultiprimeCombination);
    assert!(!v.value.is_zero());
}

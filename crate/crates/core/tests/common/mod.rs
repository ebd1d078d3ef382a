#![allow(dead_code)]

use diamond_core::abelian::{GroupType, PPartition};
use diamond_core::oracle::{build_group, enumerate_subgroups, SubgroupLattice};

pub fn lattice(t: &GroupType) -> SubgroupLattice {
    enumerate_subgroups(build_group(t, 1 << 12).unwrap()).unwrap()
}

pub fn types_up_to(max_order: u64) -> Vec<GroupType> {
    (1..=max_order).flat_map(GroupType::all_of_order).collect()
}

pub fn p_group(p: u64, exps: &[u32]) -> GroupType {
    PPartition::new(p, exps.to_vec()).unwrap().into()
}

pub fn ty(factors: &[(u64, u32)]) -> GroupType {
    GroupType::canonicalize(factors).unwrap()
}

//! Brute-force ground truth built on explicit groups and their subgroup lattices.

mod aut;
mod census;
mod diamonds;
mod group;
mod lattice;
mod typing;

pub use aut::{brute_force_aut_order, brute_force_aut_order_with_cap, BRUTE_FORCE_AUT_CAP};
pub use census::{section_census, section_census_by_duality, SectionCensus};
pub use diamonds::{
    count_diamonds, count_diamonds_naive, count_diamonds_pair_buckets, count_diamonds_with,
    count_primary_diamonds, primary_diamond_legs, DiamondStrategy, PrimaryLegs,
};
pub use group::{build_group, ExplicitGroup};
pub use lattice::{enumerate_subgroups, LatticeTables, Subgroup, SubgroupLattice, Walker};
pub use typing::{quotient_type, subgroup_type, LayerProfile};

/// Resource limits for the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest group order the oracle will materialize.
    pub order_cap: u64,
    /// Largest subgroup lattice the oracle will enumerate.
    pub max_subgroups: usize,
    /// Largest vertex set of a single (meet, join) bucket graph.
    pub max_bucket_vertices: usize,
}

impl OracleConfig {
    pub const DEFAULT_ORDER_CAP: u64 = 1024;

    pub fn with_order_cap(order_cap: u64) -> Self {
        Self {
            order_cap,
            ..Self::default()
        }
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            order_cap: Self::DEFAULT_ORDER_CAP,
            max_subgroups: 1_000_000,
            max_bucket_vertices: 50_000,
        }
    }
}

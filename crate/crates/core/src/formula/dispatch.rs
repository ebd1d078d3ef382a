use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{dm_elementary, dm_master_sum, dm_multiprime, dm_rank2};
use crate::abelian::{
    subgroup_lattice_size_elementary, subgroup_lattice_size_rank2, GroupType, PPartition,
};
use crate::error::{Error, Result};
use crate::oracle::{
    build_group, count_diamonds_with, section_census, DiamondStrategy, OracleConfig,
    SubgroupLattice,
};
use crate::Count;

/// How a diamond count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Elementary,
    Rank2,
    MasterSum,
    Oracle,
    MultiprimeCombination,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Elementary => "elementary",
            Method::Rank2 => "rank2",
            Method::MasterSum => "master-sum",
            Method::Oracle => "oracle",
            Method::MultiprimeCombination => "multiprime-combination",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodPreference {
    /// Closed forms where they exist, the master sum over an oracle census otherwise.
    #[default]
    Auto,
    /// Same choice as `Auto`, never counting diamonds by brute force.
    Formula,
    /// Brute-force count on the whole explicit group.
    Oracle,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DmConfig {
    pub preference: MethodPreference,
    pub oracle: OracleConfig,
}

/// Result for one primary component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentResult {
    pub component: PPartition,
    pub dm: Count,
    pub lattice_size: Count,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmResult {
    pub value: Count,
    pub method: Method,
    /// Per-prime results; empty for the oracle route and the trivial group.
    pub components: Vec<ComponentResult>,
}

/// dm(G) by the cheapest applicable method.
pub fn dm(t: &GroupType, config: &DmConfig) -> Result<DmResult> {
    if config.preference == MethodPreference::Oracle {
        let value = oracle_dm(t, &config.oracle)?;
        return Ok(DmResult {
            value,
            method: Method::Oracle,
            components: Vec::new(),
        });
    }
    let components = t
        .components()
        .map(|c| component_dm(c, &config.oracle))
        .collect::<Result<Vec<_>>>()?;
    let (value, method) = match components.as_slice() {
        [] => (Count::zero(), Method::Elementary),
        [only] => (only.dm.clone(), only.method),
        many => {
            let dms: BTreeMap<u64, Count> = many
                .iter()
                .map(|c| (c.component.prime(), c.dm.clone()))
                .collect();
            let lattices: BTreeMap<u64, Count> = many
                .iter()
                .map(|c| (c.component.prime(), c.lattice_size.clone()))
                .collect();
            (
                dm_multiprime(t, &dms, &lattices)?,
                Method::MultiprimeCombination,
            )
        }
    };
    Ok(DmResult {
        value,
        method,
        components,
    })
}

fn oracle_dm(t: &GroupType, oracle: &OracleConfig) -> Result<Count> {
    let unavailable = |e: Error| Error::MethodUnavailable(format!("oracle on {t}: {e}"));
    let g = build_group(t, oracle.order_cap).map_err(unavailable)?;
    let lat = SubgroupLattice::enumerate(g, *oracle).map_err(unavailable)?;
    count_diamonds_with(&lat, DiamondStrategy::SectionMemo).map_err(unavailable)
}

/// Per-component dispatch: elementary closed form, then rank ≤ 2, then the
/// master sum with an oracle section census.
pub fn component_dm(c: &PPartition, oracle: &OracleConfig) -> Result<ComponentResult> {
    let p = c.prime();
    let (dm, lattice_size, method) = if c.is_elementary() {
        let n = c.rank() as u32;
        (
            dm_elementary(n, p)?,
            subgroup_lattice_size_elementary(n, p)?,
            Method::Elementary,
        )
    } else if c.rank() <= 2 {
        let e = c.exponents();
        let (a1, a2) = if e.len() == 1 {
            (0, e[0])
        } else {
            (e[0], e[1])
        };
        (
            dm_rank2(a1, a2, p)?,
            subgroup_lattice_size_rank2(a1, a2, p)?,
            Method::Rank2,
        )
    } else {
        let unavailable = |e: Error| {
            Error::MethodUnavailable(format!(
                "component {c} needs an oracle section census (order cap {}): {e}",
                oracle.order_cap
            ))
        };
        let g = build_group(&c.to_group_type(), oracle.order_cap).map_err(unavailable)?;
        let lat = SubgroupLattice::enumerate(g, *oracle).map_err(unavailable)?;
        let census = section_census(&lat);
        (
            dm_master_sum(c, &census)?,
            Count::from(lat.len()),
            Method::MasterSum,
        )
    };
    Ok(ComponentResult {
        component: c.clone(),
        dm,
        lattice_size,
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(factors: &[(u64, u32)]) -> GroupType {
        GroupType::canonicalize(factors).unwrap()
    }

    #[test]
    fn dispatch_examples() {
        let cfg = DmConfig::default();
        let r = dm(&ty(&[(2, 2), (2, 3)]), &cfg).unwrap();
        assert_eq!((r.value, r.method), (24u32.into(), Method::Rank2));

        let r = dm(&ty(&[(2, 1), (2, 1), (3, 1), (3, 1)]), &cfg).unwrap();
        assert_eq!(
            (r.value.clone(), r.method),
            (50u32.into(), Method::MultiprimeCombination)
        );
        assert!(r.components.iter().all(|c| c.method == Method::Elementary));

        let r = dm(&ty(&[(2, 1), (2, 2), (2, 2), (2, 2)]), &cfg).unwrap();
        assert_eq!((r.value, r.method), (61474u32.into(), Method::MasterSum));

        let r = dm(&GroupType::trivial(), &cfg).unwrap();
        assert_eq!(r.value, 0u32.into());
    }

    #[test]
    fn oracle_preference() {
        let cfg = DmConfig {
            preference: MethodPreference::Oracle,
            ..Default::default()
        };
        let r = dm(&ty(&[(2, 1), (2, 1), (3, 1), (3, 1)]), &cfg).unwrap();
        assert_eq!((r.value, r.method), (50u32.into(), Method::Oracle));
    }

    #[test]
    fn unavailable_names_component_and_cap() {
        let cfg = DmConfig {
            oracle: OracleConfig::with_order_cap(64),
            ..Default::default()
        };
        let err = dm(&ty(&[(2, 1), (2, 2), (2, 2), (2, 2)]), &cfg).unwrap_err();
        let Error::MethodUnavailable(msg) = err else {
            panic!("{err:?}")
        };
        assert!(msg.contains("Z2 x Z4^3") && msg.contains("64"), "{msg}");
    }

    #[test]
    fn cyclic_groups_are_free_of_diamonds() {
        let cfg = DmConfig::default();
        for n in [1u64, 2, 12, 360, 1 << 20, 999_983, 720_720] {
            let factors: Vec<(u64, u32)> = crate::primes::factorize(n);
            let r = dm(&ty(&factors), &cfg).unwrap();
            assert!(r.value.is_zero(), "Z{n}");
        }
    }
}

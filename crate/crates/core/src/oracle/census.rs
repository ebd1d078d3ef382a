use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::group::build_group;
use super::lattice::SubgroupLattice;
use super::typing::{quotient_type, subgroup_type, Preimages};
use crate::abelian::GroupType;
use crate::error::Result;
use crate::Count;

/// Number of sections `K/H` (pairs `H ⊆ K`) of each isomorphism type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SectionCensus {
    counts: BTreeMap<GroupType, Count>,
}

impl SectionCensus {
    /// n_S(G), zero for types that do not occur.
    pub fn count(&self, s: &GroupType) -> Count {
        self.counts.get(s).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupType, &Count)> {
        self.counts.iter()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Σ n_S(G), the number of pairs `H ⊆ K`.
    pub fn total(&self) -> Count {
        self.counts.values().sum()
    }
}

impl FromIterator<(GroupType, Count)> for SectionCensus {
    fn from_iter<I: IntoIterator<Item = (GroupType, Count)>>(iter: I) -> Self {
        let mut counts: BTreeMap<GroupType, Count> = BTreeMap::new();
        for (t, c) in iter {
            if !c.is_zero() {
                *counts.entry(t).or_default() += c;
            }
        }
        Self { counts }
    }
}

/// Classifies every pair `H ⊆ K` of the lattice by the type of `K/H`.
pub fn section_census(lat: &SubgroupLattice) -> SectionCensus {
    let g = lat.group();
    let mut walker = lat.walker();
    let mut tally: HashMap<Vec<u8>, (u64, usize, usize)> = HashMap::new();
    let mut key = Vec::new();
    for h in 0..lat.len() {
        let pre = Preimages::new(g, lat.bits_of(h));
        for k in lat.up_set(h, &mut walker) {
            pre.key(lat.bits_of(k as usize), &mut key);
            match tally.get_mut(&key) {
                Some(entry) => entry.0 += 1,
                None => {
                    tally.insert(key.clone(), (1, h, k as usize));
                }
            }
        }
    }
    tally
        .into_values()
        .map(|(n, h, k)| {
            let t = Preimages::new(g, lat.bits_of(h))
                .profile(lat.bits_of(k))
                .to_group_type();
            (t, Count::from(n))
        })
        .collect()
}

/// The census recomputed as n_S(G) = Σ_{T ≤ G, T ≅ S} |L(G/T)|, where each
/// |L(G/T)| comes from enumerating an explicit group of the type of `G/T`.
pub fn section_census_by_duality(lat: &SubgroupLattice) -> Result<SectionCensus> {
    let g = lat.group();
    let top = lat.subgroup(lat.top());
    let mut lattice_sizes: HashMap<GroupType, Count> = HashMap::new();
    let mut entries = Vec::with_capacity(lat.len());
    for t in 0..lat.len() {
        let s = lat.subgroup(t);
        let sub = subgroup_type(g, &s);
        let quot = quotient_type(g, &s, &top)?;
        let size = match lattice_sizes.get(&quot) {
            Some(size) => size.clone(),
            None => {
                let qg = build_group(&quot, lat.config().order_cap)?;
                let size = Count::from(SubgroupLattice::enumerate(qg, *lat.config())?.len());
                lattice_sizes.insert(quot, size.clone());
                size
            }
        };
        entries.push((sub, size));
    }
    Ok(entries.into_iter().collect())
}

//! Isomorphism typing of subgroups and sections from torsion layers.

use super::group::ExplicitGroup;
use super::lattice::{and_popcount, get_bit, popcount, set_bit, words_for, Subgroup};
use crate::abelian::{GroupType, PPartition};
use crate::error::{Error, Result};

/// For each prime `p` of the ambient group, the numbers `m_1 ≥ m_2 ≥ ...` where
/// `m_j` counts the cyclic factors of the section of order at least `p^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LayerProfile {
    layers: Vec<(u64, Vec<u32>)>,
}

impl LayerProfile {
    /// `counts[j]` is the number of elements `x` of the section's numerator
    /// with `p^j·x` in the denominator.
    fn from_counts(per_prime: impl IntoIterator<Item = (u64, Vec<usize>)>) -> Self {
        let layers = per_prime
            .into_iter()
            .map(|(p, counts)| {
                let m = counts
                    .windows(2)
                    .map(|w| log_exact(p, w[1] / w[0]))
                    .collect();
                (p, m)
            })
            .collect();
        Self { layers }
    }

    pub fn to_group_type(&self) -> GroupType {
        let parts = self.layers.iter().filter_map(|(p, m)| {
            let mut exps = Vec::new();
            for (j, &mj) in m.iter().enumerate() {
                let next = m.get(j + 1).copied().unwrap_or(0);
                exps.extend(std::iter::repeat_n(j as u32 + 1, (mj - next) as usize));
            }
            (!exps.is_empty()).then(|| PPartition::new(*p, exps).expect("valid layer profile"))
        });
        GroupType::from_components(parts).expect("distinct primes")
    }
}

fn log_exact(p: u64, mut v: usize) -> u32 {
    let mut k = 0;
    while v > 1 {
        debug_assert_eq!(v as u64 % p, 0);
        v /= p as usize;
        k += 1;
    }
    k
}

/// Isomorphism type of the subgroup `s`.
pub fn subgroup_type(g: &ExplicitGroup, s: &Subgroup) -> GroupType {
    let mut trivial = vec![0u64; words_for(g.order())];
    set_bit(&mut trivial, 0);
    layer_profile(g, &trivial, s.bits()).to_group_type()
}

/// Isomorphism type of the section `k / h`; requires `h ⊆ k`.
pub fn quotient_type(g: &ExplicitGroup, h: &Subgroup, k: &Subgroup) -> Result<GroupType> {
    if !h.is_subset(k) {
        return Err(Error::NotContained);
    }
    Ok(layer_profile(g, h.bits(), k.bits()).to_group_type())
}

fn layer_profile(g: &ExplicitGroup, h: &[u64], k: &[u64]) -> LayerProfile {
    let h_order = popcount(h);
    LayerProfile::from_counts(g.primes().iter().enumerate().map(|(pi, &(p, e))| {
        let mut hist = vec![0usize; e as usize + 1];
        for x in super::lattice::iter_bits(k) {
            let mut y = x;
            for slot in hist.iter_mut() {
                if get_bit(h, y) {
                    *slot += 1;
                    break;
                }
                y = g.times_prime(pi, y);
            }
        }
        let mut acc = 0;
        let counts = hist.iter().map(|&c| {
            acc += c;
            acc
        });
        debug_assert_eq!(hist[0], h_order);
        (p, counts.collect())
    }))
}

/// For a fixed subgroup `H`, the sets `{x : p^j·x ∈ H}`, which classify the
/// sections `K/H` for every `K ⊇ H` with a handful of popcounts.
pub(crate) struct Preimages {
    h_order: usize,
    /// `(p, bit sets for j = 1..=e)`.
    layers: Vec<(u64, Vec<Vec<u64>>)>,
}

impl Preimages {
    pub(crate) fn new(g: &ExplicitGroup, h: &[u64]) -> Self {
        let n = g.order() as u32;
        let w = words_for(g.order());
        let layers = g
            .primes()
            .iter()
            .enumerate()
            .map(|(pi, &(p, e))| {
                let mut sets = vec![vec![0u64; w]; e as usize];
                for x in 0..n {
                    let mut y = x;
                    for j in 0..=e as usize {
                        if get_bit(h, y) {
                            for set in &mut sets[j.saturating_sub(1)..] {
                                set_bit(set, x);
                            }
                            break;
                        }
                        y = g.times_prime(pi, y);
                    }
                }
                (p, sets)
            })
            .collect();
        Self {
            h_order: popcount(h),
            layers,
        }
    }

    /// Compact key of the type of `K/H`; `k` must contain `H`.
    pub(crate) fn key(&self, k: &[u64], out: &mut Vec<u8>) {
        out.clear();
        for (p, sets) in &self.layers {
            let mut prev = self.h_order;
            for set in sets {
                let c = and_popcount(k, set);
                out.push(log_exact(*p, c / prev) as u8);
                prev = c;
            }
        }
    }

    pub(crate) fn profile(&self, k: &[u64]) -> LayerProfile {
        let per_prime = self.layers.iter().map(|(p, sets)| {
            let mut counts = vec![self.h_order];
            counts.extend(sets.iter().map(|set| and_popcount(k, set)));
            (*p, counts)
        });
        LayerProfile::from_counts(per_prime)
    }
}

use std::fmt::Write as _;
use std::hash::BuildHasher;
use std::io;

use hashbrown::HashTable;
use rustc_hash::FxBuildHasher;

use super::group::ExplicitGroup;
use super::typing::subgroup_type;
use super::OracleConfig;
use crate::error::{Error, Result};

/// A subgroup as a bit set over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    bits: Vec<u64>,
}

impl Subgroup {
    pub fn from_bits(bits: Vec<u64>) -> Self {
        Self { bits }
    }

    /// The subgroup generated by `gens`.
    pub fn generated_by(group: &ExplicitGroup, gens: &[u32]) -> Self {
        let mut bits = vec![0u64; words_for(group.order())];
        set_bit(&mut bits, 0);
        for &g in gens {
            extend_cyclic(group, &mut bits, g);
        }
        Self { bits }
    }

    pub fn bits(&self) -> &[u64] {
        &self.bits
    }

    pub fn contains(&self, x: u32) -> bool {
        get_bit(&self.bits, x)
    }

    pub fn order(&self) -> usize {
        popcount(&self.bits)
    }

    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        iter_bits(&self.bits)
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        is_subset(&self.bits, &other.bits)
    }

    /// Direct check that the set contains 0 and is closed under addition.
    pub fn is_closed(&self, group: &ExplicitGroup) -> bool {
        self.contains(0)
            && self
                .members()
                .all(|x| self.members().all(|y| self.contains(group.add(x, y))))
    }
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub(crate) fn get_bit(bits: &[u64], x: u32) -> bool {
    bits[(x >> 6) as usize] >> (x & 63) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(bits: &mut [u64], x: u32) {
    bits[(x >> 6) as usize] |= 1 << (x & 63);
}

#[inline]
pub(crate) fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub(crate) fn and_popcount(a: &[u64], b: &[u64]) -> usize {
    #[cfg(target_arch = "x86_64")]
    if std::is_x86_feature_detected!("avx2") && std::is_x86_feature_detected!("popcnt") {
        // SAFETY: both features were detected at runtime.
        return unsafe { and_popcount_avx2(a, b) };
    }
    and_popcount_portable(a, b)
}

#[inline(always)]
fn and_popcount_portable(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

// Same loop, compiled with vector popcounts; the triangle counts spend nearly
// all their time here.
#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2,popcnt")]
unsafe fn and_popcount_avx2(a: &[u64], b: &[u64]) -> usize {
    and_popcount_portable(a, b)
}

#[inline]
pub(crate) fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

pub(crate) fn iter_bits(bits: &[u64]) -> impl Iterator<Item = u32> + '_ {
    bits.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros();
            w &= w - 1;
            Some((i as u32) << 6 | t)
        })
    })
}

/// Replaces `bits` (a subgroup) by the subgroup generated by it and `x`.
pub(crate) fn extend_cyclic(group: &ExplicitGroup, bits: &mut [u64], x: u32) {
    if get_bit(bits, x) {
        return;
    }
    let base = bits.to_vec();
    let members: Vec<u32> = iter_bits(&base).collect();
    let mut shift = x;
    while !get_bit(&base, shift) {
        for &a in &members {
            set_bit(bits, group.add(a, shift));
        }
        shift = group.add(shift, x);
    }
}

fn hash_words(words: &[u64]) -> u64 {
    FxBuildHasher.hash_one(words)
}

/// Every subgroup of an [`ExplicitGroup`], with the covering relation.
///
/// Subgroups are numbered in discovery order: index 0 is the trivial subgroup
/// and every subgroup appears after at least one of its maximal subgroups.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: ExplicitGroup,
    config: OracleConfig,
    words: usize,
    bits: Vec<u64>,
    orders: Vec<u32>,
    /// The subgroup is `parent + <step>`; the trivial subgroup has no parent.
    parent: Vec<u32>,
    step: Vec<u32>,
    up_offsets: Vec<usize>,
    up_covers: Vec<u32>,
    down_offsets: Vec<usize>,
    down_covers: Vec<u32>,
    index: HashTable<u32>,
    top: u32,
}

/// Enumerates the subgroup lattice with the default [`OracleConfig`].
pub fn enumerate_subgroups(group: ExplicitGroup) -> Result<SubgroupLattice> {
    SubgroupLattice::enumerate(group, OracleConfig::default())
}

impl SubgroupLattice {
    /// Breadth-first closure from the trivial subgroup: each subgroup `A` is
    /// joined with every cyclic subgroup `<x>` such that `p·x ∈ A` for a prime
    /// `p`, which yields exactly the upper covers of `A`.
    pub fn enumerate(group: ExplicitGroup, config: OracleConfig) -> Result<Self> {
        let n = group.order();
        let words = words_for(n);
        let mut lat = Self {
            config,
            words,
            bits: Vec::new(),
            orders: Vec::new(),
            parent: Vec::new(),
            step: Vec::new(),
            up_offsets: vec![0],
            up_covers: Vec::new(),
            down_offsets: Vec::new(),
            down_covers: Vec::new(),
            index: HashTable::new(),
            top: 0,
            group,
        };
        let mut trivial = vec![0u64; words];
        set_bit(&mut trivial, 0);
        lat.insert(&trivial, u32::MAX, 0);

        let primes: Vec<u64> = lat.group.primes().iter().map(|&(p, _)| p).collect();
        let mut covered = vec![0u64; words];
        let mut cover = vec![0u64; words];
        let mut a = vec![0u64; words];
        let mut members: Vec<u32> = Vec::new();
        let mut i = 0;
        while i < lat.orders.len() {
            a.copy_from_slice(&lat.bits[i * words..(i + 1) * words]);
            covered.copy_from_slice(&a);
            members.clear();
            members.extend(iter_bits(&a));
            for x in 0..n as u32 {
                if get_bit(&covered, x) {
                    continue;
                }
                let Some(pi) =
                    (0..primes.len()).find(|&pi| get_bit(&a, lat.group.times_prime(pi, x)))
                else {
                    continue;
                };
                cover.copy_from_slice(&a);
                let mut shift = x;
                for _ in 1..primes[pi] {
                    for &m in &members {
                        set_bit(&mut cover, lat.group.add(m, shift));
                    }
                    shift = lat.group.add(shift, x);
                }
                for (c, w) in covered.iter_mut().zip(&cover) {
                    *c |= w;
                }
                let j = lat.insert(&cover, i as u32, x);
                lat.up_covers.push(j);
                if lat.orders.len() > lat.config.max_subgroups {
                    return Err(Error::OracleScaleExceeded {
                        what: "subgroup count",
                        actual: format!("more than {}", lat.config.max_subgroups),
                        cap: lat.config.max_subgroups as u64,
                    });
                }
            }
            lat.up_offsets.push(lat.up_covers.len());
            i += 1;
        }
        lat.top = (lat.orders.len() - 1) as u32;
        debug_assert_eq!(lat.orders[lat.top as usize] as usize, n);
        lat.build_down_covers();
        Ok(lat)
    }

    fn insert(&mut self, bits: &[u64], parent: u32, step: u32) -> u32 {
        let hash = hash_words(bits);
        let words = self.words;
        let arena = &self.bits;
        if let Some(&j) = self.index.find(hash, |&j| {
            &arena[j as usize * words..(j as usize + 1) * words] == bits
        }) {
            return j;
        }
        let j = self.orders.len() as u32;
        self.bits.extend_from_slice(bits);
        self.orders.push(popcount(bits) as u32);
        self.parent.push(parent);
        self.step.push(step);
        let arena = &self.bits;
        self.index.insert_unique(hash, j, |&k| {
            hash_words(&arena[k as usize * words..(k as usize + 1) * words])
        });
        j
    }

    fn build_down_covers(&mut self) {
        let len = self.orders.len();
        let mut counts = vec![0usize; len + 1];
        for &j in &self.up_covers {
            counts[j as usize + 1] += 1;
        }
        for i in 0..len {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut down = vec![0u32; self.up_covers.len()];
        for i in 0..len {
            for &j in self.up_covers_of(i) {
                down[fill[j as usize]] = i as u32;
                fill[j as usize] += 1;
            }
        }
        self.down_offsets = counts;
        self.down_covers = down;
    }

    pub fn group(&self) -> &ExplicitGroup {
        &self.group
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    /// Number of subgroups |L(G)|.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> usize {
        0
    }

    /// Index of the whole group.
    pub fn top(&self) -> usize {
        self.top as usize
    }

    pub(crate) fn bits_of(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn subgroup(&self, i: usize) -> Subgroup {
        Subgroup::from_bits(self.bits_of(i).to_vec())
    }

    pub fn subgroup_order(&self, i: usize) -> usize {
        self.orders[i] as usize
    }

    /// Index of the subgroup with exactly these members, if it is one.
    pub fn find(&self, s: &Subgroup) -> Option<usize> {
        self.find_bits(s.bits())
    }

    pub(crate) fn find_bits(&self, bits: &[u64]) -> Option<usize> {
        self.index
            .find(hash_words(bits), |&j| self.bits_of(j as usize) == bits)
            .map(|&j| j as usize)
    }

    /// `X ⊆ Y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        is_subset(self.bits_of(x), self.bits_of(y))
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        let bits: Vec<u64> = self
            .bits_of(x)
            .iter()
            .zip(self.bits_of(y))
            .map(|(a, b)| a & b)
            .collect();
        self.find_bits(&bits)
            .expect("intersection of subgroups is a subgroup")
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        let mut bits = self.bits_of(x).to_vec();
        for g in self.generators(y) {
            extend_cyclic(&self.group, &mut bits, g);
        }
        self.find_bits(&bits)
            .expect("sum of subgroups is a subgroup")
    }

    /// A generating set of subgroup `i` of size at most log2 |G|.
    pub fn generators(&self, i: usize) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut cur = i as u32;
        while cur != 0 {
            gens.push(self.step[cur as usize]);
            cur = self.parent[cur as usize];
        }
        gens
    }

    pub fn upper_covers_of(&self, i: usize) -> &[u32] {
        self.up_covers_of(i)
    }

    fn up_covers_of(&self, i: usize) -> &[u32] {
        &self.up_covers[self.up_offsets[i]..self.up_offsets[i + 1]]
    }

    pub fn lower_covers_of(&self, i: usize) -> &[u32] {
        &self.down_covers[self.down_offsets[i]..self.down_offsets[i + 1]]
    }

    /// Every subgroup containing `i` (including `i`), via the covering relation.
    pub fn up_set(&self, i: usize, walker: &mut Walker) -> Vec<u32> {
        walker.walk(i as u32, |j| self.up_covers_of(j as usize))
    }

    pub fn down_set(&self, i: usize, walker: &mut Walker) -> Vec<u32> {
        walker.walk(i as u32, |j| self.lower_covers_of(j as usize))
    }

    pub fn walker(&self) -> Walker {
        Walker {
            stamp: vec![0; self.len()],
            epoch: 0,
        }
    }

    /// Number of subgroups of each order, ascending by order.
    pub fn order_histogram(&self) -> Vec<(usize, usize)> {
        let mut h = std::collections::BTreeMap::new();
        for &o in &self.orders {
            *h.entry(o as usize).or_insert(0usize) += 1;
        }
        h.into_iter().collect()
    }

    /// One line per subgroup: index, order, member indices, type. For debugging.
    pub fn write_dump(&self, out: &mut impl io::Write) -> io::Result<()> {
        for i in 0..self.len() {
            let s = self.subgroup(i);
            let mut line = format!("{i}\t{}\t", self.subgroup_order(i));
            for (k, m) in s.members().enumerate() {
                if k > 0 {
                    line.push(',');
                }
                write!(line, "{m}").unwrap();
            }
            writeln!(out, "{line}\t{}", subgroup_type(&self.group, &s))?;
        }
        Ok(())
    }
}

/// Reusable visited marks for graph walks over a lattice.
#[derive(Debug, Clone)]
pub struct Walker {
    stamp: Vec<u32>,
    epoch: u32,
}

impl Walker {
    fn walk<'a>(&mut self, start: u32, next: impl Fn(u32) -> &'a [u32]) -> Vec<u32> {
        self.epoch += 1;
        let epoch = self.epoch;
        let mut out = vec![start];
        self.stamp[start as usize] = epoch;
        let mut k = 0;
        while k < out.len() {
            for &j in next(out[k]) {
                if self.stamp[j as usize] != epoch {
                    self.stamp[j as usize] = epoch;
                    out.push(j);
                }
            }
            k += 1;
        }
        out
    }
}

/// Full meet and join tables over subgroup indices, for small lattices.
#[derive(Debug, Clone)]
pub struct LatticeTables {
    len: usize,
    meet: Vec<u32>,
    join: Vec<u32>,
}

impl LatticeTables {
    pub const MAX_SUBGROUPS: usize = 4096;

    pub fn build(lat: &SubgroupLattice) -> Result<Self> {
        let len = lat.len();
        if len > Self::MAX_SUBGROUPS {
            return Err(Error::OracleScaleExceeded {
                what: "subgroup count for meet/join tables",
                actual: len.to_string(),
                cap: Self::MAX_SUBGROUPS as u64,
            });
        }
        let mut meet = vec![0u32; len * len];
        let mut join = vec![0u32; len * len];
        for x in 0..len {
            for y in x..len {
                let m = lat.meet(x, y) as u32;
                let j = lat.join(x, y) as u32;
                meet[x * len + y] = m;
                meet[y * len + x] = m;
                join[x * len + y] = j;
                join[y * len + x] = j;
            }
        }
        Ok(Self { len, meet, join })
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len + y] as usize
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len + y] as usize
    }
}

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::primes::is_prime;
use crate::Count;

/// Isomorphism type of a nontrivial finite abelian p-group: the prime and the
/// exponents of its cyclic factors in nondecreasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PPartition {
    prime: u64,
    exponents: Vec<u32>,
}

impl PPartition {
    /// Builds a partition from exponents in any order.
    pub fn new(prime: u64, mut exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if exponents.is_empty() {
            return Err(Error::InvalidPartition("no cyclic factors".into()));
        }
        if exponents.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "zero exponent in {exponents:?}"
            )));
        }
        exponents.sort_unstable();
        Ok(Self { prime, exponents })
    }

    /// The elementary abelian group of rank `n`.
    pub fn elementary(prime: u64, rank: usize) -> Result<Self> {
        Self::new(prime, vec![1; rank])
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Exponents α_1 ≤ ... ≤ α_n.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// Σα_i, so that the order is p^exponent_sum.
    pub fn exponent_sum(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn order(&self) -> Count {
        BigUint::from(self.prime).pow(self.exponent_sum())
    }

    pub fn is_elementary(&self) -> bool {
        self.exponents.iter().all(|&a| a == 1)
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponents.len() == 1
    }

    /// The type of S × S.
    pub fn doubled(&self) -> Self {
        let mut exponents: Vec<u32> = self.exponents.iter().flat_map(|&a| [a, a]).collect();
        exponents.sort_unstable();
        Self {
            prime: self.prime,
            exponents,
        }
    }

    /// The S with S × S of this type, if every exponent occurs an even number of times.
    pub fn halved(&self) -> Option<Self> {
        let e = &self.exponents;
        if !e.len().is_multiple_of(2) || e.chunks(2).any(|c| c[0] != c[1]) {
            return None;
        }
        Some(Self {
            prime: self.prime,
            exponents: e.iter().step_by(2).copied().collect(),
        })
    }

    /// Whether a group of this type has a subgroup (equivalently, a section) of type `other`.
    pub fn contains_type(&self, other: &PPartition) -> bool {
        self.prime == other.prime
            && other.rank() <= self.rank()
            && other
                .exponents
                .iter()
                .rev()
                .zip(self.exponents.iter().rev())
                .all(|(a, b)| a <= b)
    }

    pub fn to_group_type(&self) -> GroupType {
        GroupType::from_components([self.clone()]).expect("single component")
    }
}

impl fmt::Display for PPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.exponents.len() {
            let a = self.exponents[i];
            let run = self.exponents[i..].iter().take_while(|&&b| b == a).count();
            if !first {
                f.write_str(" x ")?;
            }
            first = false;
            write!(f, "Z{}", BigUint::from(self.prime).pow(a))?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Isomorphism type of a finite abelian group as its primary decomposition.
/// The empty map is the trivial group.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupType {
    components: BTreeMap<u64, PPartition>,
}

impl GroupType {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn from_components(parts: impl IntoIterator<Item = PPartition>) -> Result<Self> {
        let mut components = BTreeMap::new();
        for part in parts {
            let p = part.prime;
            if components.insert(p, part).is_some() {
                return Err(Error::InvalidArgument(format!("prime {p} appears twice")));
            }
        }
        Ok(Self { components })
    }

    /// Normal form of a direct product of cyclic groups of orders `p^e`, given
    /// as `(p, e)` pairs. Factors with `e = 0` are dropped.
    pub fn canonicalize(raw_factors: &[(u64, u32)]) -> Result<Self> {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &(p, e) in raw_factors {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if e > 0 {
                by_prime.entry(p).or_default().push(e);
            }
        }
        let components = by_prime
            .into_iter()
            .map(|(p, exps)| PPartition::new(p, exps).map(|part| (p, part)))
            .collect::<Result<_>>()?;
        Ok(Self { components })
    }

    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    /// Primary components in increasing prime order.
    pub fn components(&self) -> impl ExactSizeIterator<Item = &PPartition> + '_ {
        self.components.values()
    }

    pub fn component(&self, prime: u64) -> Option<&PPartition> {
        self.components.get(&prime)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.components.keys().copied()
    }

    /// The single primary component, if this is a nontrivial p-group.
    pub fn as_p_group(&self) -> Option<&PPartition> {
        match self.components.len() {
            1 => self.components.values().next(),
            _ => None,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.components.values().all(PPartition::is_cyclic)
    }

    /// Cyclic factor orders `p^α` in canonical order (primes ascending, then exponents ascending).
    pub fn cyclic_factors(&self) -> Vec<(u64, u32)> {
        self.components
            .values()
            .flat_map(|c| c.exponents.iter().map(move |&e| (c.prime, e)))
            .collect()
    }

    /// All abelian group types whose order is `order` (which must be at least 1).
    pub fn all_of_order(order: u64) -> Vec<GroupType> {
        let mut out = vec![GroupType::trivial()];
        for (p, e) in crate::primes::factorize(order) {
            let parts: Vec<PPartition> = super::partitions(e)
                .into_iter()
                .map(|exps| PPartition::new(p, exps).expect("valid partition"))
                .collect();
            out = out
                .into_iter()
                .flat_map(|t| {
                    parts.iter().map(move |part| {
                        let mut t = t.clone();
                        t.components.insert(p, part.clone());
                        t
                    })
                })
                .collect();
        }
        out
    }
}

/// Order of the group: the product of p^(Σα_i) over components.
pub fn group_order(t: &GroupType) -> Count {
    t.components().fold(Count::one(), |acc, c| acc * c.order())
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("Z1");
        }
        for (i, c) in self.components.values().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl From<PPartition> for GroupType {
    fn from(p: PPartition) -> Self {
        p.to_group_type()
    }
}

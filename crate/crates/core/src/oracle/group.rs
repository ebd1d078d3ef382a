use num_bigint::BigUint;

use crate::abelian::{group_order, GroupType};
use crate::error::{Error, Result};
use crate::primes::factorize;

/// Above this order the addition table is not materialized.
const ADD_TABLE_LIMIT: usize = 4096;

/// A finite abelian group `Z_{m_1} × ... × Z_{m_r}` with every `m_j` a prime
/// power. Elements are indexed in mixed radix (first coordinate varies
/// fastest); index 0 is the identity.
#[derive(Debug, Clone)]
pub struct ExplicitGroup {
    moduli: Vec<u64>,
    strides: Vec<usize>,
    size: usize,
    add_table: Option<Vec<u32>>,
    orders: Vec<u64>,
    /// Distinct primes with the largest exponent of each among the moduli.
    primes: Vec<(u64, u32)>,
    /// `times[i][x] = primes[i].0 · x`.
    times: Vec<Vec<u32>>,
}

/// Materializes a group of type `t`, refusing orders above `cap`.
pub fn build_group(t: &GroupType, cap: u64) -> Result<ExplicitGroup> {
    let order = group_order(t);
    if order > BigUint::from(cap) {
        return Err(Error::OracleScaleExceeded {
            what: "group order",
            actual: order.to_string(),
            cap,
        });
    }
    let moduli = t
        .cyclic_factors()
        .into_iter()
        .map(|(p, e)| p.pow(e))
        .collect();
    ExplicitGroup::from_moduli(moduli)
}

impl ExplicitGroup {
    /// Builds the group from cyclic factor orders, each a prime power ≥ 2, in
    /// the given order. The element count must fit in a `u32` index.
    pub fn from_moduli(moduli: Vec<u64>) -> Result<Self> {
        let mut size: usize = 1;
        let mut strides = Vec::with_capacity(moduli.len());
        let mut prime_of = Vec::with_capacity(moduli.len());
        for &m in &moduli {
            let f = factorize(m);
            if m < 2 || f.len() != 1 {
                return Err(Error::InvalidArgument(format!(
                    "modulus {m} is not a prime power >= 2"
                )));
            }
            prime_of.push(f[0]);
            strides.push(size);
            size = usize::try_from(m)
                .ok()
                .and_then(|m| size.checked_mul(m))
                .filter(|&s| s <= u32::MAX as usize)
                .ok_or_else(|| Error::InvalidArgument("group too large to index".into()))?;
        }
        let mut primes: Vec<(u64, u32)> = Vec::new();
        for &(p, e) in &prime_of {
            match primes.iter_mut().find(|(q, _)| *q == p) {
                Some(entry) => entry.1 = entry.1.max(e),
                None => primes.push((p, e)),
            }
        }
        primes.sort_unstable();

        let mut g = Self {
            moduli,
            strides,
            size,
            add_table: None,
            orders: Vec::new(),
            primes,
            times: Vec::new(),
        };
        g.orders = (0..size as u32).map(|x| g.compute_order(x)).collect();
        g.times = g
            .primes
            .iter()
            .map(|&(p, _)| (0..size as u32).map(|x| g.scale_slow(p, x)).collect())
            .collect();
        if size <= ADD_TABLE_LIMIT {
            let mut table = Vec::with_capacity(size * size);
            for a in 0..size as u32 {
                for b in 0..size as u32 {
                    table.push(g.add_slow(a, b));
                }
            }
            g.add_table = Some(table);
        }
        Ok(g)
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.size
    }

    /// Distinct primes dividing the order, each with its largest exponent.
    pub fn primes(&self) -> &[(u64, u32)] {
        &self.primes
    }

    pub fn group_type(&self) -> GroupType {
        let factors: Vec<(u64, u32)> = self.moduli.iter().map(|&m| factorize(m)[0]).collect();
        GroupType::canonicalize(&factors).expect("moduli are prime powers")
    }

    /// Coordinates of element `x`.
    pub fn digits(&self, x: u32) -> Vec<u64> {
        self.moduli
            .iter()
            .zip(&self.strides)
            .map(|(&m, &s)| (x as u64 / s as u64) % m)
            .collect()
    }

    pub fn index_of(&self, digits: &[u64]) -> u32 {
        digits
            .iter()
            .zip(&self.moduli)
            .zip(&self.strides)
            .map(|((&d, &m), &s)| (d % m) as usize * s)
            .sum::<usize>() as u32
    }

    /// The generator of the `j`-th cyclic factor.
    pub fn basis_element(&self, j: usize) -> u32 {
        self.strides[j] as u32
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let mut out = 0usize;
        for (&m, &s) in self.moduli.iter().zip(&self.strides) {
            let da = (a as u64 / s as u64) % m;
            let db = (b as u64 / s as u64) % m;
            out += ((da + db) % m) as usize * s;
        }
        out as u32
    }

    fn scale_slow(&self, k: u64, x: u32) -> u32 {
        let mut out = 0usize;
        for (&m, &s) in self.moduli.iter().zip(&self.strides) {
            let d = (x as u64 / s as u64) % m;
            out += ((d as u128 * k as u128) % m as u128) as usize * s;
        }
        out as u32
    }

    fn compute_order(&self, x: u32) -> u64 {
        self.moduli
            .iter()
            .zip(&self.strides)
            .map(|(&m, &s)| {
                let d = (x as u64 / s as u64) % m;
                m / num_integer::gcd(d, m)
            })
            .fold(1, num_integer::lcm)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add_table {
            Some(t) => t[a as usize * self.size + b as usize],
            None => self.add_slow(a, b),
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.scale(self.orders[a as usize] - 1, a)
    }

    /// `k · x`.
    pub fn scale(&self, k: u64, x: u32) -> u32 {
        self.scale_slow(k, x)
    }

    /// `p · x` for the `i`-th distinct prime `p`.
    #[inline]
    pub fn times_prime(&self, i: usize, x: u32) -> u32 {
        self.times[i][x as usize]
    }

    pub fn element_order(&self, x: u32) -> u64 {
        self.orders[x as usize]
    }
}

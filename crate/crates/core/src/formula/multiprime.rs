use std::collections::BTreeMap;

use num_traits::One;

use crate::abelian::GroupType;
use crate::error::{Error, Result};
use crate::Count;

/// Combines per-prime data over coprime components G_1, ..., G_k:
///
/// ```text
/// dm(G) = Σ_{∅ ≠ T ⊆ {1..k}} 6^{|T|−1} ∏_{i∈T} dm(G_i) ∏_{i∉T} |L(G_i)|
/// ```
///
/// A diamond of the product lattice is a diamond in the coordinates of T and
/// constant elsewhere; ordered triples in T align in 3!^{|T|−1} ways. The
/// subset sum is evaluated as (∏(|L(G_i)| + 6 dm(G_i)) − ∏|L(G_i)|) / 6.
pub fn dm_multiprime(
    t: &GroupType,
    per_prime_dm: &BTreeMap<u64, Count>,
    per_prime_lattice: &BTreeMap<u64, Count>,
) -> Result<Count> {
    let mut with = Count::one();
    let mut without = Count::one();
    for p in t.primes() {
        let dm = per_prime_dm.get(&p).ok_or(Error::MissingComponent(p))?;
        let l = per_prime_lattice
            .get(&p)
            .ok_or(Error::MissingComponent(p))?;
        with *= l + dm * 6u32;
        without *= l;
    }
    Ok((with - without) / 6u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn maps(
        entries: &[(u64, u64, u64)],
    ) -> (GroupType, BTreeMap<u64, Count>, BTreeMap<u64, Count>) {
        let t =
            GroupType::canonicalize(&entries.iter().map(|&(p, _, _)| (p, 1)).collect::<Vec<_>>())
                .unwrap();
        let dm = entries
            .iter()
            .map(|&(p, d, _)| (p, Count::from(d)))
            .collect();
        let l = entries
            .iter()
            .map(|&(p, _, l)| (p, Count::from(l)))
            .collect();
        (t, dm, l)
    }

    // The subset sum as written.
    fn subset_sum(dm: &[u64], l: &[u64]) -> u128 {
        let k = dm.len();
        (1u32..1 << k)
            .map(|mask| {
                let size = mask.count_ones();
                let mut term = 6u128.pow(size - 1);
                for i in 0..k {
                    term *= if mask >> i & 1 == 1 { dm[i] } else { l[i] } as u128;
                }
                term
            })
            .sum()
    }

    #[test]
    fn two_primes() {
        let (t, dm, l) = maps(&[(2, 1, 5), (3, 4, 6)]);
        assert_eq!(dm_multiprime(&t, &dm, &l).unwrap(), 50u32.into());
    }

    #[test]
    fn single_prime_passthrough() {
        let (t, dm, l) = maps(&[(2, 735, 67)]);
        assert_eq!(dm_multiprime(&t, &dm, &l).unwrap(), 735u32.into());
    }

    #[test]
    fn missing_component() {
        let (t, dm, _) = maps(&[(2, 1, 5), (3, 4, 6)]);
        let l = [(2u64, Count::from(5u32))].into_iter().collect();
        assert_eq!(dm_multiprime(&t, &dm, &l), Err(Error::MissingComponent(3)));
    }

    #[test]
    fn product_form_matches_subset_sum() {
        let cases: &[&[(u64, u64, u64)]] = &[
            &[(2, 1, 5), (3, 4, 6), (5, 10, 8)],
            &[(2, 0, 3), (3, 0, 2)],
            &[(2, 735, 67), (3, 4, 6), (5, 0, 2), (7, 56, 10)],
            &[(2, 24, 22), (3, 13, 12), (5, 31, 14), (7, 2, 9), (11, 0, 4)],
        ];
        for &case in cases {
            let (t, dm, l) = maps(case);
            let d: Vec<u64> = case.iter().map(|c| c.1).collect();
            let ls: Vec<u64> = case.iter().map(|c| c.2).collect();
            assert_eq!(
                dm_multiprime(&t, &dm, &l).unwrap(),
                subset_sum(&d, &ls).into()
            );
        }
    }
}

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abelian::{f_p, gaussian_subgroup_count, subgroup_lattice_size_elementary};
use crate::error::{Error, Result};
use crate::primes::is_prime;
use crate::Count;

fn pow(p: u64, e: u64) -> Count {
    BigUint::from(p).pow(e as u32)
}

fn exact_div(num: Count, den: u32, what: &str) -> Result<Count> {
    let (q, r) = num.div_rem(&den.into());
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::Domain(format!("{what}: inexact division by {den}")))
    }
}

/// dm(Z_p^n):
///
/// ```text
/// (1/6) Σ_{i=1}^{⌊n/2⌋} p^{i(3i−1)/2} · a_{n,p}(2i) · |L(Z_p^{n−2i})| · ∏_{k=i+1}^{2i} (p^k − 1)
/// ```
///
/// The product is |Aut(Z_p^{2i})| / |Aut(Z_p^i)|, the primary-diamond ratio of a
/// Z_p^{2i} section times 6; the denominator is the automorphism group of the
/// half Z_p^i, not of Z_p^{2i}.
pub fn dm_elementary(n: u32, p: u64) -> Result<Count> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut sum = Count::zero();
    for i in 1..=(n / 2) as u64 {
        let mut term = pow(p, i * (3 * i - 1) / 2)
            * gaussian_subgroup_count(n, 2 * i as u32, p)?
            * subgroup_lattice_size_elementary(n - 2 * i as u32, p)?;
        for k in i + 1..=2 * i {
            term *= pow(p, k) - 1u32;
        }
        sum += term;
    }
    exact_div(sum, 6, "elementary formula")
}

/// dm(Z_{p^α1} × Z_{p^α2}) for α1 ≤ α2:
///
/// ```text
/// (p + 1) / (6(p − 1)) · Σ_{i=1}^{α1} p^{3i−2} f_p(α1 − i, α2 − i)
/// ```
///
/// evaluated in exact rationals. `α1 = 0` is the cyclic group (empty sum).
pub fn dm_rank2(alpha1: u32, alpha2: u32, p: u64) -> Result<Count> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if alpha1 > alpha2 {
        return Err(Error::InvalidArgument(format!(
            "rank-2 formula requires α1 <= α2, got ({alpha1}, {alpha2})"
        )));
    }
    let mut sum = BigInt::zero();
    for i in 1..=alpha1 {
        sum += BigInt::from(pow(p, 3 * i as u64 - 2) * f_p(alpha1 - i, alpha2 - i, p)?);
    }
    let prefactor = BigRational::new(BigInt::from(p + 1), BigInt::from(6) * BigInt::from(p - 1));
    let value = prefactor * BigRational::from_integer(sum);
    if !value.denom().is_one() {
        return Err(Error::Domain(format!(
            "rank-2 formula not integral at ({alpha1}, {alpha2}, {p})"
        )));
    }
    Ok(value.to_integer().to_biguint().expect("nonnegative"))
}

/// dm(Z_p × Z_{p^n}) = n·C(p+1, 3).
pub fn dm_shortcut_prime_by_cyclic(n: u32, p: u64) -> Result<Count> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigUint::from(p);
    Ok((&pb + 1u32) * &pb * (&pb - 1u32) / 6u32 * n)
}

/// dm(Z_{2^n} × Z_{2^n}) = (3·2^{3n+2} − 49·2^n + 14n + 37) / 49.
pub fn dm_shortcut_square_2group(n: u32) -> Result<Count> {
    let num = BigInt::from(3) * BigInt::from(2).pow(3 * n + 2)
        - BigInt::from(49) * BigInt::from(2).pow(n)
        + BigInt::from(14 * n as u64 + 37);
    let (q, r) = num.div_rem(&BigInt::from(49));
    if !r.is_zero() {
        return Err(Error::Domain(format!(
            "square 2-group shortcut not integral at n = {n}"
        )));
    }
    q.to_biguint()
        .ok_or_else(|| Error::Domain(format!("square 2-group shortcut negative at n = {n}")))
}

/// The two shortcut formulas for rank 2, when one applies.
pub fn dm_rank2_shortcut(alpha1: u32, alpha2: u32, p: u64) -> Option<Count> {
    if alpha1 == 0 || alpha1 > alpha2 {
        return None;
    }
    if alpha1 == 1 {
        return dm_shortcut_prime_by_cyclic(alpha2, p).ok();
    }
    if p == 2 && alpha1 == alpha2 {
        return dm_shortcut_square_2group(alpha1).ok();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> Count {
        v.into()
    }

    #[test]
    fn elementary_values() {
        assert_eq!(dm_elementary(4, 2).unwrap(), big(735));
        assert_eq!(dm_elementary(3, 2).unwrap(), big(14));
        assert_eq!(dm_elementary(2, 2).unwrap(), big(1));
        assert_eq!(dm_elementary(2, 3).unwrap(), big(4));
        for p in [2, 3, 5, 7, 11] {
            assert_eq!(dm_elementary(1, p).unwrap(), big(0));
        }
        assert_eq!(dm_elementary(2, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn rank2_values() {
        assert_eq!(dm_rank2(2, 3, 2).unwrap(), big(24));
        assert_eq!(dm_rank2(1, 1, 3).unwrap(), dm_elementary(2, 3).unwrap());
        assert_eq!(dm_rank2(0, 5, 7).unwrap(), big(0));
        assert!(matches!(dm_rank2(3, 2, 2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn shortcuts() {
        assert_eq!(dm_rank2_shortcut(1, 2, 2), Some(big(2)));
        assert_eq!(dm_rank2_shortcut(1, 1, 2), Some(big(1)));
        assert_eq!(dm_rank2_shortcut(2, 2, 2), Some(big(13)));
        assert_eq!(dm_rank2_shortcut(2, 3, 2), None);
        assert_eq!(dm_rank2_shortcut(2, 2, 3), None);
        assert_eq!(dm_rank2_shortcut(0, 2, 3), None);
        for p in [2, 3, 5, 7, 11, 13] {
            assert_eq!(
                dm_rank2_shortcut(1, 1, p).unwrap(),
                dm_elementary(2, p).unwrap()
            );
        }
    }

    #[test]
    fn methods_agree_where_both_apply() {
        for p in [2u64, 3, 5, 7] {
            assert_eq!(dm_rank2(1, 1, p).unwrap(), dm_elementary(2, p).unwrap());
            for a1 in 1..=5 {
                for a2 in a1..=5 {
                    if let Some(c) = dm_rank2_shortcut(a1, a2, p) {
                        assert_eq!(c, dm_rank2(a1, a2, p).unwrap(), "({a1},{a2},{p})");
                    }
                }
            }
        }
    }
}

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{GroupType, PPartition};
use crate::error::{Error, Result};
use crate::primes::is_prime;
use crate::Count;

fn pow(p: u64, e: u64) -> Count {
    BigUint::from(p).pow(u32::try_from(e).expect("exponent fits in u32"))
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// |Aut(G)| for the p-group G of type `t`.
///
/// With 1-based indices, `a_r` is the last and `b_r` the first position holding
/// the exponent `α_r`:
///
/// ```text
/// |Aut(G)| = ∏ (p^{a_i} − p^{i−1}) · ∏ p^{α_u (n − a_u)} · ∏ p^{(α_v − 1)(n − b_v + 1)}
/// ```
pub fn aut_order(t: &PPartition) -> Count {
    let p = t.prime();
    let alpha = t.exponents();
    let n = alpha.len() as u64;
    let last = |r: usize| {
        (r..alpha.len())
            .take_while(|&s| alpha[s] == alpha[r])
            .last()
            .unwrap() as u64
            + 1
    };
    let first = |r: usize| {
        (0..=r)
            .rev()
            .take_while(|&s| alpha[s] == alpha[r])
            .last()
            .unwrap() as u64
            + 1
    };

    let mut acc = Count::one();
    let mut exponent = 0u64;
    for (r, &a) in alpha.iter().enumerate() {
        let i = r as u64 + 1;
        let (a_r, b_r) = (last(r), first(r));
        acc *= pow(p, a_r) - pow(p, i - 1);
        exponent += a as u64 * (n - a_r);
        exponent += (a as u64 - 1) * (n - b_r + 1);
    }
    acc * pow(p, exponent)
}

/// |Aut(Z_p^n)| = p^{n(n−1)/2} ∏_{i=1}^n (p^i − 1).
pub fn elementary_aut_order(n: u32, p: u64) -> Count {
    let n = n as u64;
    (1..=n).fold(pow(p, n * (n.saturating_sub(1)) / 2), |acc, i| {
        acc * (pow(p, i) - 1u32)
    })
}

/// |Aut(G)| of an arbitrary finite abelian group: the product over its primary components.
pub fn aut_order_of_type(t: &GroupType) -> Count {
    t.components().map(aut_order).product()
}

/// a_{n,p}(i): the number of subgroups of order p^i in Z_p^n (the Gaussian binomial).
pub fn gaussian_subgroup_count(n: u32, i: u32, p: u64) -> Result<Count> {
    check_prime(p)?;
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    let k = i.min(n - i) as u64;
    let mut acc = Count::one();
    for j in 1..=k {
        // acc = a_{n,p}(j-1) here, and the product below is exactly divisible.
        let (q, r) = (acc * (pow(p, n as u64 - j + 1) - 1u32)).div_rem(&(pow(p, j) - 1u32));
        debug_assert!(r.is_zero());
        acc = q;
    }
    Ok(acc)
}

/// |L(Z_p^n)| = Σ_j a_{n,p}(j).
pub fn subgroup_lattice_size_elementary(n: u32, p: u64) -> Result<Count> {
    (0..=n).map(|j| gaussian_subgroup_count(n, j, p)).sum()
}

/// f_p(x1, x2) = (x2−x1+1)p^{x1+2} − (x2−x1−1)p^{x1+1} − (x1+x2+3)p + (x1+x2+1).
pub fn f_p(x1: u32, x2: u32, p: u64) -> Result<Count> {
    check_prime(p)?;
    if x1 > x2 {
        return Err(Error::InvalidArgument(format!(
            "f_p requires x1 <= x2, got ({x1}, {x2})"
        )));
    }
    let (x1i, x2i) = (BigInt::from(x1), BigInt::from(x2));
    let pb = BigInt::from(p);
    let value: BigInt = (&x2i - &x1i + 1) * pb.pow(x1 + 2)
        - (&x2i - &x1i - 1) * pb.pow(x1 + 1)
        - (&x1i + &x2i + 3) * &pb
        + (&x1i + &x2i + 1);
    debug_assert!(!value.is_negative());
    Ok(value.to_biguint().expect("f_p is nonnegative"))
}

/// |L(Z_{p^α1} × Z_{p^α2})| = f_p(α1, α2) / (p − 1)². `α1 = 0` gives the cyclic group.
pub fn subgroup_lattice_size_rank2(alpha1: u32, alpha2: u32, p: u64) -> Result<Count> {
    let f = f_p(alpha1, alpha2, p)?;
    let d = pow(p - 1, 2);
    let (q, r) = f.div_rem(&d);
    if !r.is_zero() {
        return Err(Error::Domain(format!(
            "f_{p}({alpha1},{alpha2}) not divisible by (p-1)^2"
        )));
    }
    Ok(q)
}

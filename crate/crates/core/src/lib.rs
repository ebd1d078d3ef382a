//! Exact counting of diamonds (sublattices isomorphic to M5) in the subgroup
//! lattice of a finite abelian group.
//!
//! Three layers:
//!
//! * [`abelian`]: group types and closed-form counts (orders, automorphism
//!   group orders, Gaussian binomials, lattice sizes in rank ≤ 2 and the
//!   elementary abelian case).
//! * [`oracle`]: a brute-force model that materializes a small group, enumerates
//!   its subgroup lattice and counts diamonds, primary diamonds and sections
//!   directly from the lattice operations.
//! * [`formula`]: the closed-form counting pipeline and the dispatcher [`formula::dm`].

pub mod abelian;
pub mod error;
pub mod formula;
pub mod oracle;
pub mod primes;

pub use error::{Error, Result};

/// Arbitrary-precision nonnegative integer used for every count.
pub type Count = num_bigint::BigUint;

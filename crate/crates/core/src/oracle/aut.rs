use std::collections::HashMap;

use num_traits::{One, Zero};

use super::group::ExplicitGroup;
use super::lattice::{extend_cyclic, get_bit, set_bit, words_for};
use crate::error::{Error, Result};
use crate::Count;

pub const BRUTE_FORCE_AUT_CAP: usize = 64;

/// Counts automorphisms by search over images of the standard generators,
/// for groups of order at most [`BRUTE_FORCE_AUT_CAP`].
pub fn brute_force_aut_order(g: &ExplicitGroup) -> Result<Count> {
    brute_force_aut_order_with_cap(g, BRUTE_FORCE_AUT_CAP)
}

/// A homomorphism out of `Z_{m_1} × ... × Z_{m_r}` is a choice of images
/// `y_j` with `m_j·y_j = 0`; it is bijective iff it is injective, i.e. iff
/// each `y_j` has order exactly `m_j` and `<y_j>` meets the image `W` of the
/// earlier generators trivially. The number of ways to finish the search from
/// a partial assignment depends only on `W` and the level, so subtrees are
/// tallied once per distinct `(level, W)`.
pub fn brute_force_aut_order_with_cap(g: &ExplicitGroup, cap: usize) -> Result<Count> {
    if g.order() > cap {
        return Err(Error::OracleScaleExceeded {
            what: "group order for automorphism search",
            actual: g.order().to_string(),
            cap: cap as u64,
        });
    }
    let mut image = vec![0u64; words_for(g.order())];
    set_bit(&mut image, 0);
    let mut memo = HashMap::new();
    Ok(extensions(g, 0, &image, &mut memo))
}

fn extensions(
    g: &ExplicitGroup,
    level: usize,
    image: &[u64],
    memo: &mut HashMap<(usize, Vec<u64>), Count>,
) -> Count {
    if level == g.moduli().len() {
        return Count::one();
    }
    if let Some(c) = memo.get(&(level, image.to_vec())) {
        return c.clone();
    }
    let m = g.moduli()[level];
    let mut total = Count::zero();
    for y in 0..g.order() as u32 {
        if g.element_order(y) != m {
            continue;
        }
        // <y> ∩ W = 0
        let mut multiple = y;
        let mut meets = false;
        for _ in 1..m {
            if get_bit(image, multiple) {
                meets = true;
                break;
            }
            multiple = g.add(multiple, y);
        }
        if meets {
            continue;
        }
        let mut next = image.to_vec();
        extend_cyclic(g, &mut next, y);
        total += extensions(g, level + 1, &next, memo);
    }
    memo.insert((level, image.to_vec()), total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        let aut =
            |m: Vec<u64>| brute_force_aut_order(&ExplicitGroup::from_moduli(m).unwrap()).unwrap();
        assert_eq!(aut(vec![4]), 2u32.into());
        assert_eq!(aut(vec![2, 2]), 6u32.into());
        assert_eq!(aut(vec![2, 4]), 8u32.into());
        assert_eq!(aut(vec![]), 1u32.into());
        // Z_6 = Z_2 × Z_3
        assert_eq!(aut(vec![2, 3]), 2u32.into());
    }

    // Unmemoized enumeration of all generator images.
    fn exhaustive(g: &ExplicitGroup) -> u64 {
        let r = g.moduli().len();
        let n = g.order() as u32;
        let mut count = 0;
        let mut images = vec![0u32; r];
        loop {
            let ok = images
                .iter()
                .zip(g.moduli())
                .all(|(&y, &m)| g.scale(m, y) == 0);
            if ok {
                let mut hit = vec![false; n as usize];
                let mut injective = true;
                for x in 0..n {
                    let d = g.digits(x);
                    let fx = d
                        .iter()
                        .zip(&images)
                        .fold(0, |acc, (&c, &y)| g.add(acc, g.scale(c, y)));
                    if std::mem::replace(&mut hit[fx as usize], true) {
                        injective = false;
                        break;
                    }
                }
                count += injective as u64;
            }
            let mut j = 0;
            loop {
                if j == r {
                    return count;
                }
                images[j] += 1;
                if images[j] < n {
                    break;
                }
                images[j] = 0;
                j += 1;
            }
        }
    }

    #[test]
    fn memoized_search_matches_exhaustive_enumeration() {
        for moduli in [
            vec![2, 2, 2],
            vec![2, 8],
            vec![4, 4],
            vec![3, 3],
            vec![2, 2, 4],
            vec![9, 3],
        ] {
            let g = ExplicitGroup::from_moduli(moduli).unwrap();
            assert_eq!(brute_force_aut_order(&g).unwrap(), exhaustive(&g).into());
        }
    }

    #[test]
    fn cap() {
        let g = ExplicitGroup::from_moduli(vec![128]).unwrap();
        assert!(matches!(
            brute_force_aut_order(&g),
            Err(Error::OracleScaleExceeded { .. })
        ));
        assert_eq!(
            brute_force_aut_order_with_cap(&g, 128).unwrap(),
            64u32.into()
        );
    }
}

use num_integer::Integer;
use num_traits::Zero;

use crate::abelian::{
    aut_order, gaussian_subgroup_count, partitions, subgroup_lattice_size_elementary,
    subgroup_lattice_size_rank2, GroupType, PPartition,
};
use crate::error::{Error, Result};
use crate::oracle::SectionCensus;
use crate::Count;

/// Primary diamonds of S × S: |Aut(S × S)| / (6 |Aut(S)|).
pub fn primary_diamond_count(s: &PPartition) -> Count {
    let (q, r) = aut_order(&s.doubled()).div_rem(&(aut_order(s) * 6u32));
    assert!(r.is_zero(), "inexact primary diamond ratio for {s}");
    q
}

/// [`primary_diamond_count`] for a section type given as a [`GroupType`].
pub fn primary_diamond_count_of_type(s: &GroupType) -> Result<Count> {
    if s.is_trivial() {
        return Err(Error::Domain("a one-element section has no diamond".into()));
    }
    let part = s
        .as_p_group()
        .ok_or_else(|| Error::Domain(format!("{s} is not a p-group")))?;
    Ok(primary_diamond_count(part))
}

/// A source of the section counts n_{S×S}(G) for a fixed p-group G.
pub trait SquareSectionCounts {
    fn square_sections(&self, s: &PPartition) -> Result<Count>;
}

impl SquareSectionCounts for SectionCensus {
    fn square_sections(&self, s: &PPartition) -> Result<Count> {
        Ok(self.count(&s.doubled().into()))
    }
}

/// n_{S×S}(G) in closed form, for G elementary abelian or of rank at most 2.
#[derive(Debug, Clone)]
pub struct ClosedFormCensus {
    group: PPartition,
}

impl ClosedFormCensus {
    pub fn new(group: PPartition) -> Result<Self> {
        if group.is_elementary() || group.rank() <= 2 {
            Ok(Self { group })
        } else {
            Err(Error::MethodUnavailable(format!(
                "no closed-form section census for {group}"
            )))
        }
    }
}

impl SquareSectionCounts for ClosedFormCensus {
    fn square_sections(&self, s: &PPartition) -> Result<Count> {
        let g = &self.group;
        let p = g.prime();
        if s.prime() != p || !g.contains_type(&s.doubled()) {
            return Ok(Count::zero());
        }
        if g.is_elementary() {
            // Every subgroup of order p^{2i} is Z_p^{2i}, with quotient Z_p^{n-2i}.
            let n = g.rank() as u32;
            let two_i = 2 * s.rank() as u32;
            Ok(gaussian_subgroup_count(n, two_i, p)?
                * subgroup_lattice_size_elementary(n - two_i, p)?)
        } else {
            // Unique subgroup Z_{p^i}^2, with quotient Z_{p^{α1-i}} × Z_{p^{α2-i}}.
            let (a1, a2) = (g.exponents()[0], g.exponents()[1]);
            let i = s.exponents()[0];
            subgroup_lattice_size_rank2(a1 - i, a2 - i, p)
        }
    }
}

/// dm(G) = Σ_S n_{S×S}(G) · |Aut(S×S)| / (6|Aut(S)|) over nontrivial S.
pub fn dm_master_sum(g: &PPartition, census: &impl SquareSectionCounts) -> Result<Count> {
    let p = g.prime();
    let mut total = Count::zero();
    for e in 1..=g.exponent_sum() / 2 {
        for exps in partitions(e) {
            let s = PPartition::new(p, exps)?;
            if !g.contains_type(&s.doubled()) {
                continue;
            }
            let n = census.square_sections(&s)?;
            if !n.is_zero() {
                total += n * primary_diamond_count(&s);
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: u64, e: &[u32]) -> PPartition {
        PPartition::new(p, e.to_vec()).unwrap()
    }

    #[test]
    fn primary_counts() {
        assert_eq!(primary_diamond_count(&part(2, &[1])), 1u32.into());
        assert_eq!(primary_diamond_count(&part(2, &[2])), 8u32.into());
        assert_eq!(primary_diamond_count(&part(2, &[1, 1])), 560u32.into());
        assert_eq!(primary_diamond_count(&part(2, &[1, 2])), 3072u32.into());
        assert_eq!(primary_diamond_count(&part(3, &[1])), 4u32.into());
    }

    #[test]
    fn primary_domain_errors() {
        assert!(matches!(
            primary_diamond_count_of_type(&GroupType::trivial()),
            Err(Error::Domain(_))
        ));
        let mixed = GroupType::canonicalize(&[(2, 1), (3, 1)]).unwrap();
        assert!(matches!(
            primary_diamond_count_of_type(&mixed),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn closed_form_master_sum() {
        let z22 = ClosedFormCensus::new(part(2, &[1, 1])).unwrap();
        assert_eq!(dm_master_sum(&part(2, &[1, 1]), &z22).unwrap(), 1u32.into());
        let z33 = ClosedFormCensus::new(part(3, &[1, 1])).unwrap();
        assert_eq!(dm_master_sum(&part(3, &[1, 1]), &z33).unwrap(), 4u32.into());
        let z48 = ClosedFormCensus::new(part(2, &[2, 3])).unwrap();
        assert_eq!(
            dm_master_sum(&part(2, &[2, 3]), &z48).unwrap(),
            24u32.into()
        );
        let z2_4 = ClosedFormCensus::new(part(2, &[1, 1, 1, 1])).unwrap();
        assert_eq!(
            dm_master_sum(&part(2, &[1, 1, 1, 1]), &z2_4).unwrap(),
            735u32.into()
        );
        assert!(matches!(
            ClosedFormCensus::new(part(2, &[1, 2, 2])),
            Err(Error::MethodUnavailable(_))
        ));
    }
}

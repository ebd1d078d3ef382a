//! Finite abelian group types and the closed-form counts built on them.

mod counts;
mod types;

pub use counts::{
    aut_order, aut_order_of_type, elementary_aut_order, f_p, gaussian_subgroup_count,
    subgroup_lattice_size_elementary, subgroup_lattice_size_rank2,
};
pub use types::{group_order, GroupType, PPartition};

/// All partitions of `n` as nondecreasing exponent lists, in lexicographic
/// order of their nonincreasing forms (so `[1; n]` first, `[n]` last).
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            let mut p = cur.clone();
            p.reverse();
            out.push(p);
            return;
        }
        for part in 1..=left.min(max) {
            cur.push(part);
            rec(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

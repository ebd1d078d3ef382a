//! Diamond counting on an enumerated subgroup lattice.
//!
//! A diamond is an unordered triple {A, B, C} of distinct subgroups whose
//! pairwise meets coincide (= H) and whose pairwise joins coincide (= K).
//! Every pair of the triple lies in the (meet, join) bucket (H, K), so the
//! diamonds are exactly the triangles of the bucket graphs.
//!
//! In an abelian group |A ∩ B|·|A + B| = |A|·|B|, so a triangle of bucket
//! (H, K) forces |A| = |B| = |C| = sqrt(|H|·|K|). Only those vertices are
//! built, and an edge A–B with A, B ⊆ K of that order is exactly A ∩ B = H.

use std::collections::HashMap;

use super::lattice::{and_popcount, iter_bits, LatticeTables, SubgroupLattice};
use super::typing::Preimages;
use crate::error::{Error, Result};
use crate::Count;

/// How [`count_diamonds_with`] visits the (meet, join) buckets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiamondStrategy {
    /// Count the triangles of every bucket.
    #[default]
    Exhaustive,
    /// Count each bucket's triangles once per isomorphism type of K/H and reuse
    /// the tally: the interval [H, K] is isomorphic to L(K/H).
    SectionMemo,
}

/// Number of diamonds in the lattice.
pub fn count_diamonds(lat: &SubgroupLattice) -> Result<Count> {
    count_diamonds_with(lat, DiamondStrategy::Exhaustive)
}

fn exact_sqrt(v: usize) -> Option<usize> {
    let r = (v as f64).sqrt().round() as usize;
    (r.checked_mul(r) == Some(v)).then_some(r)
}

pub fn count_diamonds_with(lat: &SubgroupLattice, strategy: DiamondStrategy) -> Result<Count> {
    let g = lat.group();
    let mut walker = lat.walker();
    let mut memo: HashMap<Vec<u8>, u64> = HashMap::new();
    let mut key = Vec::new();
    let mut total: u128 = 0;
    let mut verts = Vec::new();
    for h in 0..lat.len() {
        let h_order = lat.subgroup_order(h);
        if g.order() / h_order < 4 {
            continue;
        }
        let mut up = lat.up_set(h, &mut walker);
        up.sort_unstable_by_key(|&x| (lat.subgroup_order(x as usize), x));
        let pre = match strategy {
            DiamondStrategy::SectionMemo => Some(Preimages::new(g, lat.bits_of(h))),
            DiamondStrategy::Exhaustive => None,
        };
        for &k in &up {
            let k = k as usize;
            let Some(m) = exact_sqrt(lat.subgroup_order(k) / h_order).filter(|&m| m >= 2) else {
                continue;
            };
            if let Some(pre) = &pre {
                pre.key(lat.bits_of(k), &mut key);
                if let Some(&c) = memo.get(&key) {
                    total += c as u128;
                    continue;
                }
            }
            let target = h_order * m;
            let start = up.partition_point(|&x| lat.subgroup_order(x as usize) < target);
            verts.clear();
            verts.extend(
                up[start..]
                    .iter()
                    .take_while(|&&x| lat.subgroup_order(x as usize) == target)
                    .filter(|&&x| lat.leq(x as usize, k)),
            );
            let c = bucket_triangles(lat, h_order, &verts, None)?;
            if pre.is_some() {
                memo.insert(key.clone(), c);
            }
            total += c as u128;
        }
    }
    Ok(Count::from(total))
}

/// Triangles of the graph on `verts` with an edge whenever the intersection
/// has `h_order` elements. Marks vertices lying on a triangle in `on_triangle`.
fn bucket_triangles(
    lat: &SubgroupLattice,
    h_order: usize,
    verts: &[u32],
    mut on_triangle: Option<&mut Vec<bool>>,
) -> Result<u64> {
    let v = verts.len();
    if v < 3 {
        return Ok(0);
    }
    let cap = lat.config().max_bucket_vertices;
    if v > cap {
        return Err(Error::OracleScaleExceeded {
            what: "bucket vertex count",
            actual: v.to_string(),
            cap: cap as u64,
        });
    }
    let rw = v.div_ceil(64);
    let mut adj = vec![0u64; v * rw];
    for i in 0..v {
        let a = lat.bits_of(verts[i] as usize);
        for j in i + 1..v {
            if and_popcount(a, lat.bits_of(verts[j] as usize)) == h_order {
                adj[i * rw + j / 64] |= 1 << (j % 64);
                adj[j * rw + i / 64] |= 1 << (i % 64);
            }
        }
    }
    let mut count = 0u64;
    for i in 0..v {
        let row_i = &adj[i * rw..(i + 1) * rw];
        for j in forward_neighbors(row_i, i) {
            let row_j = &adj[j * rw..(j + 1) * rw];
            // third vertex strictly above j
            let w0 = (j + 1) / 64;
            let mut c = 0u64;
            if w0 < rw {
                let head = u64::MAX.checked_shl(((j + 1) % 64) as u32).unwrap_or(0);
                c += (row_i[w0] & row_j[w0] & head).count_ones() as u64;
                c += and_popcount(&row_i[w0 + 1..], &row_j[w0 + 1..]) as u64;
            }
            if c > 0 {
                if let Some(marks) = on_triangle.as_deref_mut() {
                    marks[i] = true;
                    marks[j] = true;
                }
            }
            count += c;
        }
    }
    if let Some(marks) = on_triangle {
        // A vertex that is only ever the largest corner was not marked above.
        for k in 0..v {
            if marks[k] {
                continue;
            }
            let row_k = &adj[k * rw..(k + 1) * rw];
            marks[k] = iter_bits(row_k)
                .any(|j| and_popcount(row_k, &adj[j as usize * rw..(j as usize + 1) * rw]) > 0);
        }
    }
    Ok(count)
}

fn forward_neighbors(row: &[u64], i: usize) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(move |(w, &word)| {
        let mut bits = if w < i / 64 {
            0
        } else if w == i / 64 {
            word & u64::MAX.checked_shl((i % 64) as u32 + 1).unwrap_or(0)
        } else {
            word
        };
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let t = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(w * 64 + t)
        })
    })
}

fn primary_vertices(lat: &SubgroupLattice) -> Option<Vec<u32>> {
    let n = lat.group().order();
    let m = exact_sqrt(n).filter(|&m| m >= 2)?;
    Some(
        (0..lat.len() as u32)
            .filter(|&x| lat.subgroup_order(x as usize) == m)
            .collect(),
    )
}

/// Number of primary diamonds: meets trivial, joins the whole group.
pub fn count_primary_diamonds(lat: &SubgroupLattice) -> Result<Count> {
    match primary_vertices(lat) {
        Some(verts) => Ok(bucket_triangles(lat, 1, &verts, None)?.into()),
        None => Ok(Count::default()),
    }
}

/// Primary diamond tally together with every subgroup that is a leg of at least one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryLegs {
    pub count: Count,
    pub legs: Vec<usize>,
}

pub fn primary_diamond_legs(lat: &SubgroupLattice) -> Result<PrimaryLegs> {
    let Some(verts) = primary_vertices(lat) else {
        return Ok(PrimaryLegs {
            count: Count::default(),
            legs: Vec::new(),
        });
    };
    let mut marks = vec![false; verts.len()];
    let count = bucket_triangles(lat, 1, &verts, Some(&mut marks))?.into();
    let legs = verts
        .iter()
        .zip(&marks)
        .filter(|(_, &m)| m)
        .map(|(&x, _)| x as usize)
        .collect();
    Ok(PrimaryLegs { count, legs })
}

/// Diamond count by the literal route: bucket all incomparable pairs by
/// their (meet, join) from the full tables, then count triangles per bucket.
pub fn count_diamonds_pair_buckets(lat: &SubgroupLattice, tables: &LatticeTables) -> Count {
    let mut buckets: HashMap<(u32, u32), Vec<(u32, u32)>> = HashMap::new();
    for a in 0..lat.len() {
        for b in a + 1..lat.len() {
            let m = tables.meet(a, b);
            if m == a || m == b {
                continue;
            }
            buckets
                .entry((m as u32, tables.join(a, b) as u32))
                .or_default()
                .push((a as u32, b as u32));
        }
    }
    let mut total = 0u64;
    for edges in buckets.values() {
        let mut verts: Vec<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        verts.sort_unstable();
        verts.dedup();
        let pos: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let v = verts.len();
        let rw = v.div_ceil(64);
        let mut adj = vec![0u64; v * rw];
        for &(a, b) in edges {
            let (i, j) = (pos[&a], pos[&b]);
            adj[i * rw + j / 64] |= 1 << (j % 64);
            adj[j * rw + i / 64] |= 1 << (i % 64);
        }
        for &(a, b) in edges {
            let (i, j) = (pos[&a], pos[&b]);
            let hi = i.max(j);
            for k in hi + 1..v {
                let bit = |r: usize| adj[r * rw + k / 64] >> (k % 64) & 1 == 1;
                if bit(i) && bit(j) {
                    total += 1;
                }
            }
        }
    }
    total.into()
}

/// Diamond count by scanning every triple of subgroups.
pub fn count_diamonds_naive(lat: &SubgroupLattice, tables: &LatticeTables) -> Count {
    let n = lat.len();
    let mut total = 0u64;
    for a in 0..n {
        for b in a + 1..n {
            let (m, j) = (tables.meet(a, b), tables.join(a, b));
            if m == a || m == b {
                continue;
            }
            for c in b + 1..n {
                if tables.meet(a, c) == m
                    && tables.meet(b, c) == m
                    && tables.join(a, c) == j
                    && tables.join(b, c) == j
                {
                    total += 1;
                }
            }
        }
    }
    total.into()
}

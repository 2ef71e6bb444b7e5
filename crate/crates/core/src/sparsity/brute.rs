//! Exhaustive subset oracle. Exponential in n; used as ground truth for the
//! other recognizers and for small fixtures.

use super::{SparsityParams, SparsityVerdict, ViolationWitness, WitnessKind};
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};

pub const DEFAULT_ORACLE_LIMIT: usize = 15;

/// No limit override may push the subset table past this many vertices.
pub const HARD_ORACLE_LIMIT: usize = 25;

pub fn check_sparse_bruteforce(g: &MultiGraph, p: SparsityParams) -> Result<SparsityVerdict> {
    check_sparse_bruteforce_with_limit(g, p, DEFAULT_ORACLE_LIMIT)
}

pub fn check_sparse_bruteforce_with_limit(
    g: &MultiGraph,
    p: SparsityParams,
    limit: usize,
) -> Result<SparsityVerdict> {
    let n = g.vertex_count();
    let limit = limit.min(HARD_ORACLE_LIMIT);
    if n > limit {
        return Err(Error::Capacity {
            what: "brute-force oracle",
            size: n,
            limit,
            hint: "; use the pebble or flow method",
        });
    }
    let counts = subset_edge_counts(g);
    let witness = minimum_violator(g, p, &counts);
    let rank = greedy_rank(g, p);
    Ok(SparsityVerdict::assemble(g, p, witness, rank))
}

/// |E[S]| for every subset S, indexed by bitmask over vertex positions.
pub fn subset_edge_counts(g: &MultiGraph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut mult = vec![vec![0u32; n]; n];
    for &(u, v) in g.edge_indices() {
        mult[u][v] += 1;
        mult[v][u] += 1;
    }
    let mut counts = vec![0u32; 1 << n];
    for s in 1usize..(1 << n) {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let mut extra = 0;
        let mut bits = rest;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            extra += mult[low][u];
            bits &= bits - 1;
        }
        counts[s] = counts[rest] + extra;
    }
    counts
}

fn sorted_labels(g: &MultiGraph, mask: usize) -> Vec<&VertexId> {
    let mut out: Vec<&VertexId> = (0..g.vertex_count())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| g.label(i))
        .collect();
    out.sort();
    out
}

fn minimum_violator(g: &MultiGraph, p: SparsityParams, counts: &[u32]) -> Option<ViolationWitness> {
    let mut best: Option<(u32, usize)> = None;
    for (s, &c) in counts.iter().enumerate() {
        let size = s.count_ones();
        if size < 2 || c as i64 <= p.bound(size as usize) {
            continue;
        }
        best = match best {
            None => Some((size, s)),
            Some((bsize, _)) if size < bsize => Some((size, s)),
            Some((bsize, bs)) if size == bsize && sorted_labels(g, s) < sorted_labels(g, bs) => {
                Some((size, s))
            }
            keep => keep,
        };
    }
    best.map(|(_, s)| {
        let members: Vec<usize> = (0..g.vertex_count()).filter(|&i| s >> i & 1 == 1).collect();
        ViolationWitness::from_indices(g, &members, WitnessKind::Minimum)
    })
}

/// Greedy independent-set size in edge order, each step decided by
/// rechecking every superset of the new edge's endpoints.
fn greedy_rank(g: &MultiGraph, p: SparsityParams) -> usize {
    let n = g.vertex_count();
    let full = (1usize << n) - 1;
    let mut accepted = vec![0u32; 1 << n];
    let mut rank = 0;
    for &(u, v) in g.edge_indices() {
        let base = (1usize << u) | (1usize << v);
        let free = full & !base;
        let fits =
            supersets(base, free).all(|s| (accepted[s] as i64) < p.bound(s.count_ones() as usize));
        if fits {
            for s in supersets(base, free) {
                accepted[s] += 1;
            }
            rank += 1;
        }
    }
    rank
}

/// All masks `base | t` for `t` ranging over subsets of `free`.
fn supersets(base: usize, free: usize) -> impl Iterator<Item = usize> {
    let mut t = Some(0usize);
    std::iter::from_fn(move || {
        let cur = t?;
        t = if cur == free {
            None
        } else {
            Some(((cur | !free).wrapping_add(1)) & free)
        };
        Some(base | cur)
    })
}

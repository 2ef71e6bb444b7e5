//! Exhaustive search over small gadgets.
//!
//! Candidates have terminals a, b, c, d and internal vertices x1..xr, no
//! terminal-terminal edges, and at most a given number of parallel copies of
//! any edge. A candidate is stored as nested pair bitmasks L1 ⊇ L2 ⊇ ...,
//! where Lj holds the pairs with at least j copies. Two candidates that
//! differ only by a permutation of the internal vertices are the same
//! gadget; the enumeration keeps the one whose layer tuple is smallest.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{audit_gadget, refute_behaviorally, AuditVerdict, GadgetCandidate, GadgetMode};
use crate::error::{Error, Result};
use crate::graph::GraphBuilder;
use crate::sparsity::SparsityParams;

/// Most internal vertices the search accepts.
pub const SEARCH_LIMIT: usize = 6;

const TERMINALS: [&str; 4] = ["a", "b", "c", "d"];

/// Edge counts to enumerate when searching up to `max_internal` internal
/// vertices. Tight mode uses every count 2r + 2 that a gadget with r <=
/// `max_internal` could need, so wrongly sized candidates are generated
/// too and eliminated by the size check; sparse mode uses every count up
/// to the largest.
pub fn target_edge_counts(max_internal: usize, mode: GadgetMode) -> Vec<usize> {
    match mode {
        GadgetMode::Tight => (0..=max_internal).map(|r| 2 * r + 2).collect(),
        GadgetMode::Sparse => (0..=2 * max_internal + 2).collect(),
    }
}

/// Most parallel copies of one edge a (k,l)-sparse graph can contain: a
/// pair spans at most 2k - l edges. Searching with this bound loses nothing,
/// since any heavier candidate fails the sparsity check.
pub fn sparse_multiplicity(p: SparsityParams) -> usize {
    (2 * p.k() as usize - p.l() as usize).max(1)
}

/// Vertex pairs allowed in a candidate with `r` internal vertices, by
/// position (terminals first).
fn allowed_pairs(r: usize) -> Vec<(usize, usize)> {
    let n = 4 + r;
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if v >= 4 {
                pairs.push((u, v));
            }
        }
    }
    pairs
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..r).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(perm.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            perm.swap(j, k - 1);
        }
    }
    heap(r, &mut perm, &mut out);
    out
}

/// For each internal permutation, where each pair bit is sent.
fn pair_maps(r: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let pos = |u: usize, v: usize| {
        let key = (u.min(v), u.max(v));
        pairs.iter().position(|&p| p == key).expect("allowed pair")
    };
    permutations(r)
        .into_iter()
        .filter(|perm| perm.iter().enumerate().any(|(i, &j)| i != j))
        .map(|perm| {
            let image = |x: usize| if x < 4 { x } else { 4 + perm[x - 4] };
            pairs
                .iter()
                .map(|&(u, v)| pos(image(u), image(v)))
                .collect()
        })
        .collect()
}

fn apply_map(mask: u64, map: &[usize]) -> u64 {
    let mut out = 0;
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1 << map[i];
    }
    out
}

/// Scatters the low bits of `bits` onto the set positions of `mask`.
fn deposit(mut bits: u64, mut mask: u64) -> u64 {
    let mut out = 0;
    while mask != 0 && bits != 0 {
        let low = mask & mask.wrapping_neg();
        if bits & 1 == 1 {
            out |= low;
        }
        bits >>= 1;
        mask &= mask - 1;
    }
    out
}

/// True when no internal permutation maps `layers` to a smaller tuple.
fn is_canonical(layers: &[u64], maps: &[Vec<usize>]) -> bool {
    maps.iter().all(|map| {
        for &layer in layers {
            let image = apply_map(layer, map);
            if image != layer {
                return image > layer;
            }
        }
        true
    })
}

/// Appends every chain of layers below `layers` that adds exactly `left`
/// edges, using at most `depth` more layers.
fn extend_layers(
    layers: &mut Vec<u64>,
    left: usize,
    depth: usize,
    maps: &[Vec<usize>],
    out: &mut Vec<Vec<u64>>,
) {
    if left == 0 {
        if is_canonical(layers, maps) {
            out.push(layers.clone());
        }
        return;
    }
    if depth == 0 {
        return;
    }
    let parent = *layers.last().expect("first layer is set by the caller");
    let room = parent.count_ones() as usize;
    // the remaining layers are nested, so this one holds at least left / depth pairs
    for size in left.div_ceil(depth)..=room.min(left) {
        for bits in combinations(room, size) {
            layers.push(deposit(bits, parent));
            extend_layers(layers, left - size, depth - 1, maps, out);
            layers.pop();
        }
    }
}

/// Masks over `n_bits` bits with exactly `ones` set, in increasing order.
fn combinations(n_bits: usize, ones: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n_bits;
    let first = if ones == 0 { 0 } else { (1u64 << ones) - 1 };
    let mut next = (ones <= n_bits).then_some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n = (((r ^ cur) >> 2) / c) | r;
            (n < limit).then_some(n)
        };
        Some(cur)
    })
}

/// All candidates with exactly `r` internal vertices, an edge count in
/// `edge_counts` and at most `max_multiplicity` copies of each edge, one per
/// class of internal relabelings.
pub fn enumerate_candidates(
    r: usize,
    edge_counts: &[usize],
    max_multiplicity: usize,
) -> Result<Vec<GadgetCandidate>> {
    if r > SEARCH_LIMIT {
        return Err(Error::Capacity {
            what: "gadget search internal vertices",
            size: r,
            limit: SEARCH_LIMIT,
            hint: "",
        });
    }
    if max_multiplicity == 0 {
        return Err(Error::Precondition(
            "edge multiplicity bound must be at least 1".into(),
        ));
    }
    let pairs = allowed_pairs(r);
    let maps = pair_maps(r, &pairs);
    let mut counts: Vec<usize> = edge_counts
        .iter()
        .copied()
        .filter(|&m| m <= pairs.len() * max_multiplicity)
        .collect();
    counts.sort_unstable();
    counts.dedup();
    let mut chains = Vec::new();
    for &m in &counts {
        if m == 0 {
            chains.push(Vec::new());
            continue;
        }
        for first in m.div_ceil(max_multiplicity)..=pairs.len().min(m) {
            for mask in combinations(pairs.len(), first) {
                // a chain is only minimal if its first layer already is
                if !maps.iter().all(|map| apply_map(mask, map) >= mask) {
                    continue;
                }
                let mut layers = vec![mask];
                extend_layers(
                    &mut layers,
                    m - first,
                    max_multiplicity - 1,
                    &maps,
                    &mut chains,
                );
            }
        }
    }
    Ok(chains
        .iter()
        .map(|layers| candidate(r, &pairs, layers))
        .collect())
}

fn candidate(r: usize, pairs: &[(usize, usize)], layers: &[u64]) -> GadgetCandidate {
    let mut b = GraphBuilder::new();
    for t in TERMINALS {
        b.vertex(t).expect("fresh label");
    }
    for i in 1..=r {
        b.vertex(&format!("x{i}")).expect("fresh label");
    }
    for (i, &(u, v)) in pairs.iter().enumerate() {
        for layer in layers {
            if layer >> i & 1 == 1 {
                b.edge_by_index(u, v).expect("positions in range");
            }
        }
    }
    GadgetCandidate::new(b.build(), TERMINALS).expect("no terminal edges by construction")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub params: SparsityParams,
    pub mode: GadgetMode,
    pub max_internal: usize,
    pub max_multiplicity: usize,
    pub edge_counts: Vec<usize>,
    /// Candidates enumerated for r = 0, 1, ..., max_internal.
    pub candidates_per_r: Vec<usize>,
    pub candidates: usize,
    /// Which check eliminated each candidate ("i".."vii", or "behavioral").
    pub histogram: BTreeMap<String, usize>,
    pub survivors: Vec<GadgetCandidate>,
}

/// Enumerates every candidate up to `max_internal` internal vertices and
/// `max_multiplicity` parallel copies per edge, audits it, and tries to
/// refute structural survivors on the fixtures. A survivor passes all audits
/// and every fixture.
pub fn search_gadgets(
    p: SparsityParams,
    max_internal: usize,
    max_multiplicity: usize,
    mode: GadgetMode,
) -> Result<SearchReport> {
    if p.k() != 2 {
        return Err(Error::Precondition(format!(
            "gadget search is implemented for k = 2, got k = {}",
            p.k()
        )));
    }
    if max_internal > SEARCH_LIMIT {
        return Err(Error::Capacity {
            what: "gadget search internal vertices",
            size: max_internal,
            limit: SEARCH_LIMIT,
            hint: "; lower the internal vertex bound",
        });
    }
    let edge_counts = target_edge_counts(max_internal, mode);
    let mut candidates_per_r = Vec::new();
    let mut histogram = BTreeMap::new();
    let mut survivors = Vec::new();
    for r in 0..=max_internal {
        let batch = enumerate_candidates(r, &edge_counts, max_multiplicity)?;
        candidates_per_r.push(batch.len());
        let outcomes: Vec<Result<Option<String>>> = batch
            .par_iter()
            .map(|gamma| {
                let report = audit_gadget(gamma, p, mode)?;
                if report.verdict == AuditVerdict::Refuted {
                    return Ok(report.failed_check().map(|c| c.name().to_string()));
                }
                Ok(refute_behaviorally(gamma, p, mode).map(|_| "behavioral".to_string()))
            })
            .collect();
        for (gamma, outcome) in batch.into_iter().zip(outcomes) {
            match outcome? {
                Some(check) => *histogram.entry(check).or_insert(0) += 1,
                None => survivors.push(gamma),
            }
        }
    }
    Ok(SearchReport {
        params: p,
        mode,
        max_internal,
        max_multiplicity,
        candidates: candidates_per_r.iter().sum(),
        edge_counts,
        candidates_per_r,
        histogram,
        survivors,
    })
}

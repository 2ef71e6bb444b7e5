//! Independent reference implementations shared by the integration suites.
//! Deliberately naive: straight loops over subsets and edges.

#![allow(dead_code)]

use klsparse::graph::GraphBuilder;
use klsparse::{MultiGraph, SparsityParams};

pub fn edges_in(g: &MultiGraph, mask: u64) -> usize {
    g.edge_indices()
        .iter()
        .filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
        .count()
}

pub fn naive_sparse(g: &MultiGraph, p: SparsityParams) -> bool {
    let n = g.vertex_count();
    (0u64..1 << n)
        .filter(|m| m.count_ones() >= 2)
        .all(|m| edges_in(g, m) as i64 <= p.bound(m.count_ones() as usize))
}

pub fn naive_tight(g: &MultiGraph, p: SparsityParams) -> bool {
    g.edge_count() as i64 == p.bound(g.vertex_count()) && naive_sparse(g, p)
}

/// Whether the vertices in `mask` induce a connected subgraph.
pub fn connected_within(g: &MultiGraph, mask: u64) -> bool {
    if mask == 0 {
        return true;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    loop {
        let mut grew = false;
        for &(u, v) in g.edge_indices() {
            if mask >> u & 1 == 1 && mask >> v & 1 == 1 {
                let (su, sv) = (seen >> u & 1 == 1, seen >> v & 1 == 1);
                if su != sv {
                    seen |= 1 << u | 1 << v;
                    grew = true;
                }
            }
        }
        if !grew {
            return seen == mask;
        }
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// Every labeled multigraph on `n` vertices with each pair repeated at
/// most `max_mult` times. `max_mult = 1` gives the simple graphs.
pub fn all_graphs(n: usize, max_mult: usize) -> Vec<MultiGraph> {
    let pairs = pairs(n);
    let base = max_mult + 1;
    let total = base.pow(pairs.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut b = GraphBuilder::new();
            for i in 0..n {
                b.vertex(&format!("v{i}")).unwrap();
            }
            for &(u, v) in &pairs {
                for _ in 0..code % base {
                    b.edge_by_index(u, v).unwrap();
                }
                code /= base;
            }
            b.build()
        })
        .collect()
}

/// The corpus for the three-way agreement checks: simple graphs up to six
/// vertices and multigraphs (multiplicity at most 2) up to five.
pub fn exhaustive_corpus() -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.extend(all_graphs(n, 1));
    }
    for n in 2..=5 {
        out.extend(
            all_graphs(n, 2)
                .into_iter()
                .filter(|g| g.simplified().edge_count() < g.edge_count()),
        );
    }
    out
}

pub fn complete(n: usize) -> MultiGraph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.vertex(&format!("v{i}")).unwrap();
    }
    for (u, v) in pairs(n) {
        b.edge_by_index(u, v).unwrap();
    }
    b.build()
}

pub fn complete_bipartite(s: usize, t: usize) -> MultiGraph {
    let mut b = GraphBuilder::new();
    for i in 0..s + t {
        b.vertex(&format!("v{i}")).unwrap();
    }
    for u in 0..s {
        for v in s..s + t {
            b.edge_by_index(u, v).unwrap();
        }
    }
    b.build()
}

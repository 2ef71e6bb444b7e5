//! Bitmask helpers for the exhaustive subset scans in audits.

use std::collections::VecDeque;

use crate::graph::{MultiGraph, VertexId};
use crate::sparsity::brute::subset_edge_counts;

pub(crate) struct SubsetTable<'g> {
    pub g: &'g MultiGraph,
    counts: Vec<u32>,
    /// neighbor bitmask per vertex (parallel edges collapsed)
    nbrs: Vec<u64>,
}

impl<'g> SubsetTable<'g> {
    pub fn new(g: &'g MultiGraph) -> Self {
        let mut nbrs = vec![0u64; g.vertex_count()];
        for &(u, v) in g.edge_indices() {
            nbrs[u] |= 1 << v;
            nbrs[v] |= 1 << u;
        }
        SubsetTable {
            g,
            counts: subset_edge_counts(g),
            nbrs,
        }
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.g.vertex_count()) - 1
    }

    pub fn edges(&self, mask: u64) -> usize {
        self.counts[mask as usize] as usize
    }

    /// Shortest path from `from` to `to` inside `mask`, by vertex positions.
    pub fn path_within(&self, mask: u64, from: usize, to: usize) -> Option<Vec<usize>> {
        if mask >> from & 1 == 0 || mask >> to & 1 == 0 {
            return None;
        }
        let mut parent = vec![usize::MAX; self.g.vertex_count()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = vec![to];
                let mut y = to;
                while y != from {
                    y = parent[y];
                    path.push(y);
                }
                path.reverse();
                return Some(path);
            }
            let mut next = self.nbrs[x] & mask;
            while next != 0 {
                let y = next.trailing_zeros() as usize;
                next &= next - 1;
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Vertices of `mask` reachable from `from` without leaving `mask`.
    pub fn reach_within(&self, mask: u64, from: usize) -> u64 {
        let mut seen = 1u64 << from;
        let mut frontier = seen;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.nbrs[x] & mask & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen & mask
    }

    /// Members in vertex order.
    pub fn labels(&self, mask: u64) -> Vec<VertexId> {
        (0..self.g.vertex_count())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.g.label(i).clone())
            .collect()
    }

    pub fn path_labels(&self, path: &[usize]) -> Vec<VertexId> {
        path.iter().map(|&i| self.g.label(i).clone()).collect()
    }

    /// Ordering key: smaller sets first, then sorted label sequence.
    pub fn key(&self, mask: u64) -> (u32, Vec<&VertexId>) {
        let mut labels: Vec<&VertexId> = (0..self.g.vertex_count())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.g.label(i))
            .collect();
        labels.sort();
        (mask.count_ones(), labels)
    }

    /// Among masks accepted by `pred`, the one with the smallest key.
    pub fn first(&self, pred: impl Fn(u64) -> bool) -> Option<u64> {
        let mut best: Option<u64> = None;
        for mask in 0..=self.full() {
            if !pred(mask) {
                continue;
            }
            best = match best {
                Some(b) if b.count_ones() < mask.count_ones() => Some(b),
                Some(b) if b.count_ones() == mask.count_ones() && self.key(b) <= self.key(mask) => {
                    Some(b)
                }
                _ => Some(mask),
            };
        }
        best
    }
}

pub(crate) fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | 1 << i)
}

pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

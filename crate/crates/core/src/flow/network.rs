//! Integral max flow by shortest augmenting paths (Edmonds-Karp).
//!
//! Multiple sources and sinks are handled with a super-source and
//! super-sink joined by effectively unbounded arcs. Adjacency lists are
//! sorted by neighbor index, so the BFS, and therefore the flow and the
//! residual cut, depend only on the arc list.

use std::collections::VecDeque;

const UNBOUNDED: u64 = u64::MAX / 4;

#[derive(Debug, Clone)]
pub(crate) struct Network {
    nodes: usize,
    /// Residual arcs; arc 2i is forward, 2i+1 its reverse.
    head: Vec<usize>,
    cap: Vec<u64>,
    orig: Vec<u64>,
    adj: Vec<Vec<usize>>,
    /// Number of caller arcs; they occupy residual slots `0..2 * caller_arcs`.
    caller_arcs: usize,
    source: usize,
    sink: usize,
}

impl Network {
    /// `arcs` are (from, to, capacity) over nodes `0..nodes`.
    pub(crate) fn new(
        nodes: usize,
        arcs: &[(usize, usize, u64)],
        sources: &[usize],
        sinks: &[usize],
    ) -> Self {
        let source = nodes;
        let sink = nodes + 1;
        let total = nodes + 2;
        let mut all: Vec<(usize, usize, u64)> = arcs.to_vec();
        all.extend(sources.iter().map(|&s| (source, s, UNBOUNDED)));
        all.extend(sinks.iter().map(|&t| (t, sink, UNBOUNDED)));

        let mut head = Vec::with_capacity(2 * all.len());
        let mut cap = Vec::with_capacity(2 * all.len());
        let mut adj = vec![Vec::new(); total];
        for (i, &(u, v, c)) in all.iter().enumerate() {
            head.push(v);
            cap.push(c);
            head.push(u);
            cap.push(0);
            adj[u].push(2 * i);
            adj[v].push(2 * i + 1);
        }
        for list in &mut adj {
            list.sort_by_key(|&a| (head[a], a));
        }
        Network {
            nodes: total,
            head,
            orig: cap.clone(),
            cap,
            adj,
            caller_arcs: arcs.len(),
            source,
            sink,
        }
    }

    /// Clears all flow and sets the capacity of caller arc `arc`.
    pub(crate) fn reset_with(&mut self, arc: usize, capacity: u64) {
        self.orig[2 * arc] = capacity;
        self.cap.copy_from_slice(&self.orig);
    }

    /// Runs to completion and returns the flow value.
    pub(crate) fn run(&mut self) -> u64 {
        let mut value = 0;
        let mut parent = vec![usize::MAX; self.nodes];
        loop {
            parent.fill(usize::MAX);
            let mut queue = VecDeque::from([self.source]);
            let mut seen = vec![false; self.nodes];
            seen[self.source] = true;
            'bfs: while let Some(x) = queue.pop_front() {
                for &a in &self.adj[x] {
                    let y = self.head[a];
                    if !seen[y] && self.cap[a] > 0 {
                        seen[y] = true;
                        parent[y] = a;
                        if y == self.sink {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if !seen[self.sink] {
                return value;
            }
            let mut bottleneck = UNBOUNDED;
            let mut y = self.sink;
            while y != self.source {
                let a = parent[y];
                bottleneck = bottleneck.min(self.cap[a]);
                y = self.head[a ^ 1];
            }
            let mut y = self.sink;
            while y != self.source {
                let a = parent[y];
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                y = self.head[a ^ 1];
            }
            value += bottleneck;
        }
    }

    /// Flow on each caller arc.
    pub(crate) fn flows(&self) -> Vec<u64> {
        (0..self.caller_arcs).map(|i| self.cap[2 * i + 1]).collect()
    }

    /// Caller nodes reachable from the sources in the residual graph: the
    /// source side of a minimum cut once `run` has finished.
    pub(crate) fn source_side(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.adj[x] {
                let y = self.head[a];
                if !seen[y] && self.cap[a] > 0 {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen.truncate(self.nodes - 2);
        seen
    }
}

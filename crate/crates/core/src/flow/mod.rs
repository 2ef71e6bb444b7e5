//! Sparsity by maximum flow.
//!
//! For each edge e of G we build a layered network: one source per edge,
//! one node per edge, one node per vertex, one sink per vertex. Source arcs
//! carry 1 unit (l+1 for the boosted edge e), edge nodes feed both endpoints
//! through arcs of capacity alpha = m+l+1, and each vertex drains at most k.
//! G is (k,l)-sparse exactly when every one of the m networks carries m+l.
//!
//! The networks are solved with a generic augmenting-path algorithm over a
//! super-source and super-sink; nothing here exploits planarity.

mod check;
mod network;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::graph::{MultiGraph, VertexId};
use crate::sparsity::SparsityParams;

pub use check::{check_sparse_via_flow, flow_rank, solve_instances, InstanceOutcome};
pub(crate) use network::Network;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeRole {
    Source,
    EdgeNode,
    VertexNode,
    Sink,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowNode {
    pub id: String,
    pub role: NodeRole,
}

/// A directed arc between node positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
}

/// The network for one boosted edge.
///
/// Node order: sources `s{i}`, edge nodes `e{i}`, vertex nodes `v:{label}`,
/// sinks `t:{label}`. Arc order: source arcs by edge, then both endpoint
/// arcs of each edge node, then sink arcs by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowInstance {
    pub nodes: Vec<FlowNode>,
    pub arcs: Vec<FlowArc>,
    pub boosted_edge: usize,
    pub alpha: u64,
}

/// Arc list in node-position space; shared by [`FlowInstance`] and the
/// allocation-light checker.
pub(crate) fn layout(
    g: &MultiGraph,
    p: SparsityParams,
    boosted: usize,
) -> Vec<(usize, usize, u64)> {
    let m = g.edge_count();
    let n = g.vertex_count();
    let alpha = alpha(g, p);
    let mut arcs = Vec::with_capacity(3 * m + n);
    for i in 0..m {
        let cap = if i == boosted { p.l() as u64 + 1 } else { 1 };
        arcs.push((i, m + i, cap));
    }
    for (i, &(u, v)) in g.edge_indices().iter().enumerate() {
        arcs.push((m + i, 2 * m + u, alpha));
        arcs.push((m + i, 2 * m + v, alpha));
    }
    for v in 0..n {
        arcs.push((2 * m + v, 2 * m + n + v, p.k() as u64));
    }
    arcs
}

fn alpha(g: &MultiGraph, p: SparsityParams) -> u64 {
    (g.edge_count() + p.l() as usize + 1) as u64
}

pub fn build_flow_instance(
    g: &MultiGraph,
    p: SparsityParams,
    boosted: usize,
) -> Result<FlowInstance> {
    let m = g.edge_count();
    if boosted >= m {
        return Err(input(format!(
            "edge index {boosted} out of range (graph has {m} edges)"
        )));
    }
    let mut nodes = Vec::with_capacity(2 * m + 2 * g.vertex_count());
    nodes.extend((0..m).map(|i| FlowNode {
        id: format!("s{i}"),
        role: NodeRole::Source,
    }));
    nodes.extend((0..m).map(|i| FlowNode {
        id: format!("e{i}"),
        role: NodeRole::EdgeNode,
    }));
    nodes.extend(g.vertices().iter().map(|v| FlowNode {
        id: format!("v:{v}"),
        role: NodeRole::VertexNode,
    }));
    nodes.extend(g.vertices().iter().map(|v| FlowNode {
        id: format!("t:{v}"),
        role: NodeRole::Sink,
    }));
    let arcs = layout(g, p, boosted)
        .into_iter()
        .map(|(from, to, capacity)| FlowArc { from, to, capacity })
        .collect();
    Ok(FlowInstance {
        nodes,
        arcs,
        boosted_edge: boosted,
        alpha: alpha(g, p),
    })
}

/// Maximum flow with a minimum cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: u64,
    /// Flow on each arc, parallel to `FlowInstance::arcs`.
    pub flow: Vec<u64>,
    /// Node positions on the source side of a minimum cut: everything
    /// reachable from the sources in the final residual network.
    pub min_cut: Vec<usize>,
}

impl FlowInstance {
    pub fn nodes_with_role(&self, role: NodeRole) -> impl Iterator<Item = usize> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(move |(_, n)| n.role == role)
            .map(|(i, _)| i)
    }

    pub fn total_source_capacity(&self) -> u64 {
        self.arcs
            .iter()
            .filter(|a| self.nodes[a.from].role == NodeRole::Source)
            .map(|a| a.capacity)
            .sum()
    }

    /// Sum of capacities of arcs leaving `side`.
    pub fn cut_capacity(&self, side: &[usize]) -> u64 {
        let mut inside = vec![false; self.nodes.len()];
        for &i in side {
            inside[i] = true;
        }
        self.arcs
            .iter()
            .filter(|a| inside[a.from] && !inside[a.to])
            .map(|a| a.capacity)
            .sum()
    }

    fn network(&self) -> Network {
        let arcs: Vec<(usize, usize, u64)> = self
            .arcs
            .iter()
            .map(|a| (a.from, a.to, a.capacity))
            .collect();
        let sources: Vec<usize> = self.nodes_with_role(NodeRole::Source).collect();
        let sinks: Vec<usize> = self.nodes_with_role(NodeRole::Sink).collect();
        Network::new(self.nodes.len(), &arcs, &sources, &sinks)
    }

    /// Capacity bounds and conservation at every node that is neither a
    /// source nor a sink.
    pub fn is_feasible(&self, flow: &[u64]) -> bool {
        if flow.len() != self.arcs.len() {
            return false;
        }
        let mut balance = vec![0i128; self.nodes.len()];
        for (a, &f) in self.arcs.iter().zip(flow) {
            if f > a.capacity {
                return false;
            }
            balance[a.from] -= f as i128;
            balance[a.to] += f as i128;
        }
        self.nodes
            .iter()
            .zip(&balance)
            .all(|(n, &b)| matches!(n.role, NodeRole::Source | NodeRole::Sink) || b == 0)
    }

    /// The instance as JSON: nodes, arcs by node id, alpha, boosted edge.
    pub fn to_json_value(&self) -> serde_json::Value {
        let arcs: Vec<serde_json::Value> = self
            .arcs
            .iter()
            .map(|a| {
                serde_json::json!({
                    "from": self.nodes[a.from].id,
                    "to": self.nodes[a.to].id,
                    "capacity": a.capacity,
                })
            })
            .collect();
        serde_json::json!({
            "nodes": self.nodes,
            "arcs": arcs,
            "alpha": self.alpha,
            "boosted_edge": self.boosted_edge,
        })
    }

    /// Graphviz rendering with one rank per layer.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph flow {\n  rankdir=LR;\n");
        for role in [
            NodeRole::Source,
            NodeRole::EdgeNode,
            NodeRole::VertexNode,
            NodeRole::Sink,
        ] {
            out.push_str("  { rank=same;");
            for i in self.nodes_with_role(role) {
                let _ = write!(out, " {:?};", self.nodes[i].id);
            }
            out.push_str(" }\n");
        }
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "  {:?} -> {:?} [label=\"{}\"];",
                self.nodes[a.from].id, self.nodes[a.to].id, a.capacity
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn max_flow(inst: &FlowInstance) -> FlowResult {
    let mut net = inst.network();
    let value = net.run();
    let side = net.source_side();
    FlowResult {
        value,
        flow: net.flows(),
        min_cut: (0..inst.nodes.len()).filter(|&i| side[i]).collect(),
    }
}

/// Checks that `inst` is `g` with every edge subdivided by its edge node and
/// a pendant source or sink hung on each edge and vertex node: removing the
/// degree-one sources and sinks and suppressing the degree-two edge nodes
/// must give back exactly the edge multiset of `g` on its vertex labels.
pub fn verify_structure_preservation(g: &MultiGraph, inst: &FlowInstance) -> bool {
    let count = inst.nodes.len();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); count];
    for a in &inst.arcs {
        if a.from >= count || a.to >= count {
            return false;
        }
        nbrs[a.from].push(a.to);
        nbrs[a.to].push(a.from);
    }
    let pendant = |i: usize| {
        matches!(inst.nodes[i].role, NodeRole::Source | NodeRole::Sink) && nbrs[i].len() == 1
    };
    if (0..count)
        .any(|i| matches!(inst.nodes[i].role, NodeRole::Source | NodeRole::Sink) && !pendant(i))
    {
        return false;
    }

    let mut label_of: HashMap<usize, &str> = HashMap::new();
    for i in inst.nodes_with_role(NodeRole::VertexNode) {
        match inst.nodes[i].id.strip_prefix("v:") {
            Some(label) => label_of.insert(i, label),
            None => return false,
        };
    }
    let mut vertex_labels: Vec<&str> = label_of.values().copied().collect();
    vertex_labels.sort_unstable();
    let mut expected_labels: Vec<&str> = g.vertices().iter().map(VertexId::as_str).collect();
    expected_labels.sort_unstable();
    if vertex_labels != expected_labels {
        return false;
    }

    let mut recovered = Vec::new();
    for e in inst.nodes_with_role(NodeRole::EdgeNode) {
        let inner: Vec<usize> = nbrs[e].iter().copied().filter(|&x| !pendant(x)).collect();
        if inner.len() != 2 {
            return false;
        }
        let (Some(u), Some(v)) = (label_of.get(&inner[0]), label_of.get(&inner[1])) else {
            return false;
        };
        recovered.push(if u <= v { (*u, *v) } else { (*v, *u) });
    }
    // vertex nodes may only touch edge nodes and their own sink
    for &v in label_of.keys() {
        if nbrs[v]
            .iter()
            .any(|&x| inst.nodes[x].role == NodeRole::VertexNode)
        {
            return false;
        }
    }
    let mut expected: Vec<(&str, &str)> = g
        .edges()
        .map(|(u, v)| {
            let (u, v) = (u.as_str(), v.as_str());
            if u <= v {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    recovered.sort_unstable();
    expected.sort_unstable();
    recovered == expected
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: i64, l: i64) -> SparsityParams {
        SparsityParams::new(k, l).unwrap()
    }

    fn k2() -> MultiGraph {
        MultiGraph::from_edges(&[("u", "v")]).unwrap()
    }

    #[test]
    fn k2_instance_shape() {
        let inst = build_flow_instance(&k2(), p(2, 3), 0).unwrap();
        assert_eq!(inst.nodes.len(), 6);
        assert_eq!(inst.alpha, 5);
        let caps: Vec<(String, String, u64)> = inst
            .arcs
            .iter()
            .map(|a| {
                (
                    inst.nodes[a.from].id.clone(),
                    inst.nodes[a.to].id.clone(),
                    a.capacity,
                )
            })
            .collect();
        let want = [
            ("s0", "e0", 4),
            ("e0", "v:u", 5),
            ("e0", "v:v", 5),
            ("v:u", "t:u", 2),
            ("v:v", "t:v", 2),
        ];
        assert_eq!(caps.len(), want.len());
        for (got, (a, b, c)) in caps.iter().zip(want) {
            assert_eq!((got.0.as_str(), got.1.as_str(), got.2), (a, b, c));
        }
        let res = max_flow(&inst);
        assert_eq!(res.value, 4);
        assert!(inst.is_feasible(&res.flow));
    }

    #[test]
    fn triangle_instance() {
        let tri = MultiGraph::from_edges(&[("u", "v"), ("v", "w"), ("w", "u")]).unwrap();
        let inst = build_flow_instance(&tri, p(2, 3), 0).unwrap();
        assert_eq!(inst.nodes.len(), 12);
        assert_eq!(inst.alpha, 7);
        let boosted: Vec<_> = inst.arcs.iter().filter(|a| a.capacity == 4).collect();
        assert_eq!(boosted.len(), 1);
        for e in 0..3 {
            let inst = build_flow_instance(&tri, p(2, 3), e).unwrap();
            assert_eq!(max_flow(&inst).value, 6);
        }
    }

    #[test]
    fn zero_source_capacity_gives_zero_flow() {
        let mut inst = build_flow_instance(&k2(), p(2, 3), 0).unwrap();
        inst.arcs[0].capacity = 0;
        let res = max_flow(&inst);
        assert_eq!(res.value, 0);
        assert_eq!(inst.cut_capacity(&res.min_cut), 0);
    }

    #[test]
    fn bad_edge_index() {
        assert!(build_flow_instance(&k2(), p(2, 3), 1).is_err());
    }

    #[test]
    fn structure_preserved_until_an_arc_goes() {
        let g = MultiGraph::from_edges(&[("a", "b"), ("a", "b"), ("b", "c")]).unwrap();
        let mut inst = build_flow_instance(&g, p(1, 0), 2).unwrap();
        assert!(verify_structure_preservation(&g, &inst));
        inst.arcs.remove(3);
        assert!(!verify_structure_preservation(&g, &inst));
    }

    #[test]
    fn dot_mentions_every_arc() {
        let inst = build_flow_instance(&k2(), p(2, 3), 0).unwrap();
        let dot = inst.to_dot();
        assert_eq!(dot.matches("->").count(), inst.arcs.len());
        assert!(dot.contains("\"s0\" -> \"e0\" [label=\"4\"]"));
    }
}

//! Undirected multigraphs with stable string labels.
//!
//! A [`MultiGraph`] keeps its vertices and edges in insertion order, rejects
//! loops, and allows repeated vertex pairs. Every other module in the crate
//! builds on this type, so it stays small: construction goes through
//! [`GraphBuilder`] and every derived graph is a fresh value.

mod io;

use std::borrow::Borrow;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{input, Error, Result};

pub(crate) use io::graph_from_value;
pub use io::{parse_text, to_text};

/// A vertex label: nonempty, no whitespace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(input("vertex label must be nonempty"));
        }
        if label.chars().any(char::is_whitespace) {
            return Err(input(format!("vertex label {label:?} contains whitespace")));
        }
        Ok(VertexId(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for VertexId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl TryFrom<&str> for VertexId {
    type Error = Error;
    fn try_from(s: &str) -> Result<Self> {
        VertexId::new(s)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        VertexId::new(s).map_err(serde::de::Error::custom)
    }
}

/// Converts a slice of string-likes into labels, failing on the first bad one.
pub fn labels<S: AsRef<str>>(items: &[S]) -> Result<Vec<VertexId>> {
    items.iter().map(|s| VertexId::new(s.as_ref())).collect()
}

/// Incremental constructor for [`MultiGraph`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    edges: Vec<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a new vertex; duplicate labels are an error.
    pub fn vertex(&mut self, label: &str) -> Result<usize> {
        if self.index.contains_key(label) {
            return Err(input(format!("duplicate vertex {label:?}")));
        }
        Ok(self.insert(VertexId::new(label)?))
    }

    /// Returns the index of `label`, adding it if absent.
    pub fn ensure_vertex(&mut self, label: &str) -> Result<usize> {
        match self.index.get(label) {
            Some(&i) => Ok(i),
            None => Ok(self.insert(VertexId::new(label)?)),
        }
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    fn insert(&mut self, id: VertexId) -> usize {
        let i = self.vertices.len();
        self.index.insert(id.clone(), i);
        self.vertices.push(id);
        i
    }

    pub fn edge(&mut self, u: &str, v: &str) -> Result<()> {
        let ui = *self
            .index
            .get(u)
            .ok_or_else(|| input(format!("edge endpoint {u:?} is not a vertex")))?;
        let vi = *self
            .index
            .get(v)
            .ok_or_else(|| input(format!("edge endpoint {v:?} is not a vertex")))?;
        self.edge_by_index(ui, vi)
    }

    pub fn edge_by_index(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.vertices.len() || v >= self.vertices.len() {
            return Err(input(format!(
                "edge ({u},{v}) references a missing vertex index"
            )));
        }
        if u == v {
            return Err(input(format!(
                "loop on vertex {:?}",
                self.vertices[u].as_str()
            )));
        }
        self.edges.push((u, v));
        Ok(())
    }

    pub fn build(self) -> MultiGraph {
        MultiGraph {
            vertices: self.vertices,
            index: self.index,
            edges: self.edges,
        }
    }
}

/// Undirected loop-free multigraph. Vertex and edge order is insertion order.
#[derive(Debug, Clone, Default)]
pub struct MultiGraph {
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    edges: Vec<(usize, usize)>,
}

impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for MultiGraph {}

impl MultiGraph {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a graph from explicit vertex and edge lists.
    pub fn from_parts<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.vertex(v.as_ref())?;
        }
        for (u, v) in edges {
            b.edge(u.as_ref(), v.as_ref())?;
        }
        Ok(b.build())
    }

    /// Builds a graph whose vertices are the edge endpoints in order of first appearance.
    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for (u, v) in edges {
            let ui = b.ensure_vertex(u.as_ref())?;
            let vi = b.ensure_vertex(v.as_ref())?;
            b.edge_by_index(ui, vi)?;
        }
        Ok(b.build())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Edges as index pairs, in insertion order.
    pub fn edge_indices(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = (&VertexId, &VertexId)> + '_ {
        self.edges
            .iter()
            .map(|&(u, v)| (&self.vertices[u], &self.vertices[v]))
    }

    pub fn label(&self, i: usize) -> &VertexId {
        &self.vertices[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| input(format!("unknown vertex {label:?}")))
    }

    /// Resolves labels to indices, rejecting unknown ones.
    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.require(l.as_ref())).collect()
    }

    /// Membership vector for a label set.
    pub fn membership<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<bool>> {
        let mut inside = vec![false; self.vertex_count()];
        for i in self.indices_of(labels)? {
            inside[i] = true;
        }
        Ok(inside)
    }

    /// |E[S]| for a membership vector.
    pub fn count_within(&self, inside: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| inside[u] && inside[v])
            .count()
    }

    /// |E[S]| for a label set.
    pub fn edges_within<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        Ok(self.count_within(&self.membership(labels)?))
    }

    /// Number of edges (with multiplicity) joining `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            .count()
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(a), Some(b)) => self.multiplicity(a, b) > 0,
            _ => false,
        }
    }

    /// Neighbor lists with multiplicity, in edge order.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Subgraph induced by `s`. Vertices keep this graph's order; edge
    /// multiplicities are preserved.
    pub fn induced_subgraph<S: AsRef<str>>(&self, s: &[S]) -> Result<MultiGraph> {
        let inside = self.membership(s)?;
        Ok(self.induced_by(&inside))
    }

    pub fn induced_by(&self, inside: &[bool]) -> MultiGraph {
        let mut b = GraphBuilder::new();
        let mut remap = vec![usize::MAX; self.vertex_count()];
        for (i, v) in self.vertices.iter().enumerate() {
            if inside[i] {
                remap[i] = b.insert(v.clone());
            }
        }
        for &(u, v) in &self.edges {
            if inside[u] && inside[v] {
                b.edges.push((remap[u], remap[v]));
            }
        }
        b.build()
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for start in 0..self.vertex_count() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True iff the graph has at most one connected component.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Union with `other`, where `identification` maps vertices of `other`
    /// onto vertices of `self`. Unidentified vertices of `other` keep their
    /// labels unless that clashes, in which case they become `<label>#<n>`
    /// with the smallest free `n >= 1`.
    pub fn union_identify<S: AsRef<str>>(
        &self,
        other: &MultiGraph,
        identification: &[(S, S)],
    ) -> Result<MultiGraph> {
        let mut target = vec![None; other.vertex_count()];
        let mut used_targets = HashSet::new();
        for (from, to) in identification {
            let (from, to) = (from.as_ref(), to.as_ref());
            let fi = other
                .index_of(from)
                .ok_or_else(|| input(format!("identified vertex {from:?} not in second graph")))?;
            let ti = self
                .index_of(to)
                .ok_or_else(|| input(format!("identification target {to:?} not in first graph")))?;
            if target[fi].is_some() {
                return Err(input(format!("vertex {from:?} identified twice")));
            }
            if !used_targets.insert(ti) {
                return Err(input(format!(
                    "identification is not injective: two vertices map to {to:?}"
                )));
            }
            target[fi] = Some(ti);
        }

        let mut b = GraphBuilder {
            vertices: self.vertices.clone(),
            index: self.index.clone(),
            edges: self.edges.clone(),
        };
        let mut remap = vec![0; other.vertex_count()];
        for (i, v) in other.vertices.iter().enumerate() {
            remap[i] = match target[i] {
                Some(t) => t,
                None => {
                    let label = if b.contains(v.as_str()) {
                        fresh_label(v.as_str(), |l| b.contains(l))
                    } else {
                        v.as_str().to_owned()
                    };
                    b.insert(VertexId(label))
                }
            };
        }
        for &(u, v) in &other.edges {
            b.edges.push((remap[u], remap[v]));
        }
        Ok(b.build())
    }

    /// Removes one copy of the edge `uv` (the first in edge order).
    pub fn without_edge(&self, u: &str, v: &str) -> Result<MultiGraph> {
        let (ui, vi) = (self.require(u)?, self.require(v)?);
        let pos = self
            .edges
            .iter()
            .position(|&(a, b)| (a, b) == (ui, vi) || (a, b) == (vi, ui))
            .ok_or_else(|| input(format!("edge {u}-{v} not in graph")))?;
        let mut out = self.clone();
        out.edges.remove(pos);
        Ok(out)
    }

    /// Removes the edge at position `i`.
    pub fn without_edge_at(&self, i: usize) -> Result<MultiGraph> {
        if i >= self.edge_count() {
            return Err(input(format!("edge index {i} out of range")));
        }
        let mut out = self.clone();
        out.edges.remove(i);
        Ok(out)
    }

    pub fn with_edge(&self, u: &str, v: &str) -> Result<MultiGraph> {
        let (ui, vi) = (self.require(u)?, self.require(v)?);
        let mut b = GraphBuilder {
            vertices: self.vertices.clone(),
            index: self.index.clone(),
            edges: self.edges.clone(),
        };
        b.edge_by_index(ui, vi)?;
        Ok(b.build())
    }

    /// Keeps only the edges at the given positions (in the given order).
    pub fn edge_subgraph(&self, keep: &[usize]) -> MultiGraph {
        let mut out = self.clone();
        out.edges = keep.iter().map(|&i| self.edges[i]).collect();
        out
    }

    /// Renames vertices through `rename`; the result must stay injective.
    pub fn relabel(&self, rename: impl Fn(&VertexId) -> String) -> Result<MultiGraph> {
        let mut b = GraphBuilder::new();
        for v in &self.vertices {
            b.vertex(&rename(v))?;
        }
        b.edges = self.edges.clone();
        Ok(b.build())
    }

    /// Same graph with parallel edges collapsed to one.
    pub fn simplified(&self) -> MultiGraph {
        let mut seen = HashSet::new();
        let mut out = self.clone();
        out.edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| seen.insert((u.min(v), u.max(v))))
            .collect();
        out
    }

    /// Equality up to vertex and edge order (labels must match exactly).
    pub fn same_as(&self, other: &MultiGraph) -> bool {
        if self.vertex_count() != other.vertex_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        if self.vertices.iter().any(|v| !other.contains(v.as_str())) {
            return false;
        }
        let key = |g: &MultiGraph| {
            let mut e: Vec<(VertexId, VertexId)> = g
                .edges()
                .map(|(u, v)| {
                    if u <= v {
                        (u.clone(), v.clone())
                    } else {
                        (v.clone(), u.clone())
                    }
                })
                .collect();
            e.sort();
            e
        };
        key(self) == key(other)
    }
}

/// `<base>#<n>` for the smallest `n >= 1` that `taken` rejects.
pub(crate) fn fresh_label(base: &str, taken: impl Fn(&str) -> bool) -> String {
    (1..)
        .map(|n| format!("{base}#{n}"))
        .find(|l| !taken(l))
        .expect("unbounded counter")
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<VertexId>,
    edges: Vec<[VertexId; 2]>,
}

impl Serialize for MultiGraph {
    fn serialize<Ser: Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        GraphDoc {
            vertices: self.vertices.clone(),
            edges: self.edges().map(|(u, v)| [u.clone(), v.clone()]).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MultiGraph {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(de)?;
        io::graph_from_value(&value, "").map_err(serde::de::Error::custom)
    }
}

impl MultiGraph {
    /// Parses the canonical JSON form, reporting the offending field on error.
    pub fn from_json(text: &str) -> Result<MultiGraph> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {}", e.line()),
            message: e.to_string(),
        })?;
        io::graph_from_value(&value, "")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }
}

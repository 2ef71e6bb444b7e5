//! Crossing gadgets: substitution, structural audits, behavioral refutation
//! against fixture graphs, and exhaustive search over small candidates.
//!
//! A gadget Γ has four terminals a, b, c, d. Applying it to a graph G with
//! edges ab and cd removes both edges and glues Γ in by identifying its
//! terminals with a, b, c, d. A gadget is only useful if G and the result
//! always agree on membership in the class of (k,l)-tight (or sparse)
//! graphs; the audits here check necessary consequences of that.

mod audit;
mod contradiction;
mod fixtures;
mod refute;
mod replace;
mod search;
mod subsets;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{input, Error, Result};
use crate::graph::{graph_from_value, MultiGraph, VertexId};

pub use audit::{
    audit_gadget, AuditReport, AuditVerdict, CheckId, CheckResult, CheckWitness, DenseWitnesses,
};
pub use contradiction::{derive_contradiction, Contradiction, ContradictionReport, Quadrants};
pub use fixtures::{Expectation, Fixture, FixtureCheck, FixtureSet};
pub use refute::{refute_behaviorally, Refutation};
pub use replace::{apply_gadget, replace_edge};
pub use search::{
    enumerate_candidates, search_gadgets, sparse_multiplicity, target_edge_counts, SearchReport,
    SEARCH_LIMIT,
};

/// Whether a gadget must preserve tightness or sparsity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetMode {
    Tight,
    Sparse,
}

impl std::str::FromStr for GadgetMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tight" => Ok(GadgetMode::Tight),
            "sparse" => Ok(GadgetMode::Sparse),
            other => Err(input(format!("unknown gadget mode {other:?}"))),
        }
    }
}

/// A graph with terminals (a, b, c, d): distinct, present, and with no edge
/// between two terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetCandidate {
    graph: MultiGraph,
    terminals: [VertexId; 4],
    indices: [usize; 4],
}

impl GadgetCandidate {
    pub fn new(graph: MultiGraph, terminals: [&str; 4]) -> Result<Self> {
        let idx = graph.indices_of(&terminals)?;
        let indices = [idx[0], idx[1], idx[2], idx[3]];
        for i in 0..4 {
            for j in i + 1..4 {
                if indices[i] == indices[j] {
                    return Err(input("gadget terminals must be distinct"));
                }
                if graph.multiplicity(indices[i], indices[j]) > 0 {
                    return Err(input(format!(
                        "gadget has an edge between terminals {} and {}",
                        terminals[i], terminals[j]
                    )));
                }
            }
        }
        Ok(GadgetCandidate {
            terminals: indices.map(|i| graph.label(i).clone()),
            graph,
            indices,
        })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    /// Labels of a, b, c, d.
    pub fn terminals(&self) -> &[VertexId; 4] {
        &self.terminals
    }

    /// Vertex positions of a, b, c, d.
    pub fn terminal_indices(&self) -> [usize; 4] {
        self.indices
    }

    fn terminal_strs(&self) -> [&str; 4] {
        [0, 1, 2, 3].map(|i| self.terminals[i].as_str())
    }

    /// One vertex joined to each terminal.
    pub fn star() -> Self {
        let g = MultiGraph::from_edges(&[("x", "a"), ("x", "b"), ("x", "c"), ("x", "d")])
            .expect("static graph");
        GadgetCandidate::new(g, ["a", "b", "c", "d"]).expect("static gadget")
    }

    /// Reads the graph JSON format extended with `"terminals": [a, b, c, d]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {}", e.line()),
            message: e.to_string(),
        })?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self> {
        let graph = graph_from_value(value, "")?;
        let parse_err = |message: &str| Error::Parse {
            location: "terminals".into(),
            message: message.into(),
        };
        let terms = value
            .get("terminals")
            .ok_or_else(|| parse_err("missing field"))?
            .as_array()
            .filter(|t| t.len() == 4)
            .ok_or_else(|| parse_err("expected an array of four labels"))?;
        let mut names = [""; 4];
        for (i, t) in terms.iter().enumerate() {
            names[i] = t.as_str().ok_or_else(|| parse_err("expected strings"))?;
        }
        GadgetCandidate::new(graph, names)
    }

    pub fn to_json_value(&self) -> Value {
        let mut v = serde_json::to_value(&self.graph).expect("graph serialization is infallible");
        v["terminals"] = serde_json::to_value(&self.terminals).expect("labels serialize");
        v
    }
}

impl Serialize for GadgetCandidate {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(ser)
    }
}

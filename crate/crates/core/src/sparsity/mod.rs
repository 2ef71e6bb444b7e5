//! (k,l)-sparsity, tightness and spanning.
//!
//! Two recognizers live here: an exhaustive subset oracle ([`brute`]) and the
//! pebble game ([`pebble`]). A third, flow-based recognizer lives in
//! [`crate::flow`]. All three report a [`SparsityVerdict`].

pub mod brute;
pub mod pebble;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};

pub use brute::{
    check_sparse_bruteforce, check_sparse_bruteforce_with_limit, DEFAULT_ORACLE_LIMIT,
};
pub use pebble::{check_spanning, check_sparse_pebble, PebbleGame, SpanningReport};

/// The pair (k,l) with 1 <= k and 0 <= l <= 2k-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct SparsityParams {
    k: u32,
    l: u32,
}

#[derive(Deserialize)]
struct RawParams {
    k: i64,
    l: i64,
}

impl TryFrom<RawParams> for SparsityParams {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        SparsityParams::new(r.k, r.l)
    }
}

impl SparsityParams {
    pub fn new(k: i64, l: i64) -> Result<Self> {
        if k < 1 || l < 0 || l > 2 * k - 1 || k > u32::MAX as i64 {
            return Err(Error::Params { k, l });
        }
        Ok(SparsityParams {
            k: k as u32,
            l: l as u32,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// k|S| - l, the most edges a set of `size` vertices may induce.
    pub fn bound(&self, size: usize) -> i64 {
        self.k as i64 * size as i64 - self.l as i64
    }

    /// Every valid (k,l) with k in `1..=max_k`.
    pub fn all_up_to(max_k: u32) -> Vec<SparsityParams> {
        (1..=max_k)
            .flat_map(|k| (0..2 * k).map(move |l| SparsityParams { k, l }))
            .collect()
    }
}

impl std::fmt::Display for SparsityParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// Which recognizer produced a witness; they carry different guarantees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// Smallest violating set, ties broken by sorted label sequence.
    Minimum,
    /// Vertices reachable from a rejected edge in the pebble orientation.
    BlockedSet,
    /// Endpoints of the edge nodes on the source side of a small cut.
    Cut,
}

/// A vertex set S with |S| >= 2 and |E[S]| > k|S| - l.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationWitness {
    pub subset: Vec<VertexId>,
    pub edge_count: usize,
    pub kind: WitnessKind,
}

impl ViolationWitness {
    /// Builds a witness from vertex indices, counting its edges from `g`.
    pub fn from_indices(g: &MultiGraph, members: &[usize], kind: WitnessKind) -> Self {
        let mut inside = vec![false; g.vertex_count()];
        for &i in members {
            inside[i] = true;
        }
        ViolationWitness {
            subset: (0..g.vertex_count())
                .filter(|&i| inside[i])
                .map(|i| g.label(i).clone())
                .collect(),
            edge_count: g.count_within(&inside),
            kind,
        }
    }

    /// Recounts from scratch: the stored count matches and the set violates.
    pub fn verify(&self, g: &MultiGraph, p: SparsityParams) -> bool {
        let Ok(count) = g.edges_within(&self.subset) else {
            return false;
        };
        let mut distinct = self.subset.clone();
        distinct.sort();
        distinct.dedup();
        distinct.len() == self.subset.len()
            && self.subset.len() >= 2
            && count == self.edge_count
            && count as i64 > p.bound(self.subset.len())
    }
}

/// Outcome of a recognizer run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsityVerdict {
    pub sparse: bool,
    pub tight: bool,
    pub spanning: bool,
    pub witness: Option<ViolationWitness>,
    /// Size of the greedily built independent edge set (input order).
    #[serde(rename = "rank")]
    pub independent_edge_count: usize,
}

impl SparsityVerdict {
    pub(crate) fn assemble(
        g: &MultiGraph,
        p: SparsityParams,
        witness: Option<ViolationWitness>,
        independent_edge_count: usize,
    ) -> Self {
        let target = p.bound(g.vertex_count());
        let sparse = witness.is_none();
        SparsityVerdict {
            sparse,
            tight: sparse && g.edge_count() as i64 == target,
            spanning: independent_edge_count as i64 == target,
            witness,
            independent_edge_count,
        }
    }

    pub fn holds(&self, predicate: Predicate) -> bool {
        match predicate {
            Predicate::Sparse => self.sparse,
            Predicate::Tight => self.tight,
            Predicate::Spanning => self.spanning,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Predicate {
    Sparse,
    Tight,
    Spanning,
}

impl std::str::FromStr for Predicate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sparse" => Ok(Predicate::Sparse),
            "tight" => Ok(Predicate::Tight),
            "spanning" => Ok(Predicate::Spanning),
            other => Err(Error::Input(format!("unknown predicate {other:?}"))),
        }
    }
}

/// Which recognizer to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Pebble,
    Flow,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Brute, Method::Pebble, Method::Flow];

    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Pebble => "pebble",
            Method::Flow => "flow",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "pebble" => Ok(Method::Pebble),
            "flow" => Ok(Method::Flow),
            other => Err(Error::Input(format!("unknown method {other:?}"))),
        }
    }
}

/// Runs one recognizer. `oracle_limit` caps the brute-force method.
pub fn recognize(
    g: &MultiGraph,
    p: SparsityParams,
    method: Method,
    oracle_limit: usize,
) -> Result<SparsityVerdict> {
    match method {
        Method::Brute => check_sparse_bruteforce_with_limit(g, p, oracle_limit),
        Method::Pebble => Ok(check_sparse_pebble(g, p)),
        Method::Flow => Ok(crate::flow::check_sparse_via_flow(g, p)),
    }
}

/// The subset oracle when the graph is small enough, else the pebble game.
pub(crate) fn best_effort(g: &MultiGraph, p: SparsityParams) -> SparsityVerdict {
    check_sparse_bruteforce(g, p).unwrap_or_else(|_| check_sparse_pebble(g, p))
}

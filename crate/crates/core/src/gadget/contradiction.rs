//! Turning a pair of dense sets (S1 around a, b and S2 around c, d) into a
//! concrete inconsistency inside the gadget.
//!
//! Every outcome is a recountable fact about Γ: a pair of vertex-disjoint
//! a-b and c-d paths (impossible with the terminals on one face), a set
//! containing all terminals with more than 2|S| - 6 edges, a set with one
//! terminal from each crossing edge and more than 2|S| - 4 edges, or an
//! intersection S1 ∩ S2 that is not (2,l)-sparse.

use serde::Serialize;

use super::subsets::{bit, SubsetTable};
use super::GadgetCandidate;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};
use crate::planarity::has_terminal_face;
use crate::sparsity::SparsityParams;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Contradiction {
    /// Vertex-disjoint a-b and c-d paths. `terminal_face` records whether Γ
    /// nevertheless passed the terminal-face test (it never should).
    CrossingPaths {
        ab: Vec<VertexId>,
        cd: Vec<VertexId>,
        terminal_face: bool,
    },
    /// A set containing a, b, c, d with more than 2|S| - 6 edges.
    TerminalSetTooDense {
        subset: Vec<VertexId>,
        edges: usize,
        bound: i64,
    },
    /// S1 ∩ S2 induces more than 2|S| - l edges.
    CommonPartNotSparse {
        subset: Vec<VertexId>,
        edges: usize,
        bound: i64,
    },
    /// A set meeting {a,b} and {c,d} once each with more than 2|S| - 4 edges.
    SplitSetTooDense {
        subset: Vec<VertexId>,
        edges: usize,
        bound: i64,
        terminals: [VertexId; 2],
    },
}

impl Contradiction {
    /// Recounts the claim from the raw graph.
    pub fn recounts(&self, g: &MultiGraph) -> bool {
        let dense = |subset: &[VertexId], edges: usize, bound: i64| {
            g.edges_within(subset)
                .is_ok_and(|e| e == edges && e as i64 > bound)
        };
        match self {
            Contradiction::CrossingPaths { ab, cd, .. } => {
                is_path(g, ab) && is_path(g, cd) && ab.iter().all(|v| !cd.contains(v))
            }
            Contradiction::TerminalSetTooDense {
                subset,
                edges,
                bound,
            }
            | Contradiction::CommonPartNotSparse {
                subset,
                edges,
                bound,
            }
            | Contradiction::SplitSetTooDense {
                subset,
                edges,
                bound,
                ..
            } => dense(subset, *edges, *bound),
        }
    }
}

pub(crate) fn is_path(g: &MultiGraph, path: &[VertexId]) -> bool {
    let mut seen = std::collections::HashSet::new();
    !path.is_empty()
        && path
            .iter()
            .all(|v| g.contains(v.as_str()) && seen.insert(v))
        && path
            .windows(2)
            .all(|w| g.has_edge(w[0].as_str(), w[1].as_str()))
}

/// The l = 0 decomposition: S_a is the part of S1 \ S2 reachable from a,
/// S_b the rest of S1 \ S2, and likewise S_c, S_d in S2 \ S1. With
/// S_x' = S_x ∪ (S1 ∩ S2), each z_x = 2|S_x'| - |E[S_x']|.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quadrants {
    pub s_a: Vec<VertexId>,
    pub s_b: Vec<VertexId>,
    pub s_c: Vec<VertexId>,
    pub s_d: Vec<VertexId>,
    pub common: Vec<VertexId>,
    pub z_a: i64,
    pub z_b: i64,
    pub z_c: i64,
    pub z_d: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContradictionReport {
    /// 1: S1 and S2 disjoint, 2: one common vertex, 3: two or more.
    pub case: u8,
    pub contradiction: Option<Contradiction>,
    pub quadrants: Option<Quadrants>,
}

pub fn derive_contradiction<S: AsRef<str>>(
    gamma: &GadgetCandidate,
    s1: &[S],
    s2: &[S],
    p: SparsityParams,
) -> Result<ContradictionReport> {
    let g = gamma.graph();
    if g.vertex_count() > super::audit::AUDIT_LIMIT {
        return Err(Error::Capacity {
            what: "gadget audit",
            size: g.vertex_count(),
            limit: super::audit::AUDIT_LIMIT,
            hint: "",
        });
    }
    let table = SubsetTable::new(g);
    let m1 = super::subsets::mask_of(&g.indices_of(s1)?);
    let m2 = super::subsets::mask_of(&g.indices_of(s2)?);
    let [a, b, c, d] = gamma.terminal_indices();
    check_dense(&table, m1, (a, b), (c, d), "S1")?;
    check_dense(&table, m2, (c, d), (a, b), "S2")?;
    Ok(derive_masks(gamma, &table, m1, m2, p))
}

fn check_dense(
    table: &SubsetTable,
    m: u64,
    inside: (usize, usize),
    outside: (usize, usize),
    name: &str,
) -> Result<()> {
    let size = m.count_ones() as i64;
    let ok = m & bit(inside.0) != 0
        && m & bit(inside.1) != 0
        && m & (bit(outside.0) | bit(outside.1)) == 0
        && table.edges(m) as i64 >= 2 * size - 3
        && table.path_within(m, inside.0, inside.1).is_some();
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{name} must contain its terminal pair, avoid the other pair, induce at least 2|S|-3 edges and connect its pair"
        )))
    }
}

/// Same as [`derive_contradiction`] on validated masks.
pub(crate) fn derive_masks(
    gamma: &GadgetCandidate,
    table: &SubsetTable,
    m1: u64,
    m2: u64,
    p: SparsityParams,
) -> ContradictionReport {
    let [a, b, c, d] = gamma.terminal_indices();
    let common = m1 & m2;
    let union = m1 | m2;
    let bound5 = |m: u64| 2 * m.count_ones() as i64 - 6;
    let crossing = |ab: Vec<usize>, cd: Vec<usize>| {
        let t = gamma.terminal_strs();
        Contradiction::CrossingPaths {
            ab: table.path_labels(&ab),
            cd: table.path_labels(&cd),
            terminal_face: has_terminal_face(gamma.graph(), t[0], t[1], t[2], t[3])
                .unwrap_or(false),
        }
    };
    let too_dense = |m: u64| {
        (table.edges(m) as i64 > bound5(m)).then(|| Contradiction::TerminalSetTooDense {
            subset: table.labels(m),
            edges: table.edges(m),
            bound: bound5(m),
        })
    };

    if common == 0 {
        let ab = table.path_within(m1, a, b).expect("validated");
        let cd = table.path_within(m2, c, d).expect("validated");
        return ContradictionReport {
            case: 1,
            contradiction: Some(crossing(ab, cd)),
            quadrants: None,
        };
    }
    let case = if common.count_ones() == 1 { 2 } else { 3 };
    if let Some(found) = too_dense(union) {
        return ContradictionReport {
            case,
            contradiction: Some(found),
            quadrants: None,
        };
    }
    // The union stayed within 2|S|-6, so S1 ∩ S2 must carry more edges
    // than the dense sets allow.
    let common_bound = 2 * common.count_ones() as i64 - p.l() as i64;
    if table.edges(common) as i64 > common_bound {
        return ContradictionReport {
            case,
            contradiction: Some(Contradiction::CommonPartNotSparse {
                subset: table.labels(common),
                edges: table.edges(common),
                bound: common_bound,
            }),
            quadrants: None,
        };
    }
    if case == 2 || p.l() > 0 {
        return ContradictionReport {
            case,
            contradiction: None,
            quadrants: None,
        };
    }

    let only1 = m1 & !m2;
    let only2 = m2 & !m1;
    let s_a = table.reach_within(only1, a);
    if s_a & bit(b) != 0 {
        let ab = table.path_within(only1, a, b).expect("reachable");
        let cd = table.path_within(m2, c, d).expect("validated");
        return ContradictionReport {
            case,
            contradiction: Some(crossing(ab, cd)),
            quadrants: None,
        };
    }
    let s_c = table.reach_within(only2, c);
    if s_c & bit(d) != 0 {
        let ab = table.path_within(m1, a, b).expect("validated");
        let cd = table.path_within(only2, c, d).expect("reachable");
        return ContradictionReport {
            case,
            contradiction: Some(crossing(ab, cd)),
            quadrants: None,
        };
    }
    let s_b = only1 & !s_a;
    let s_d = only2 & !s_c;
    let z = |part: u64| {
        let m = part | common;
        2 * m.count_ones() as i64 - table.edges(m) as i64
    };
    let quadrants = Quadrants {
        s_a: table.labels(s_a),
        s_b: table.labels(s_b),
        s_c: table.labels(s_c),
        s_d: table.labels(s_d),
        common: table.labels(common),
        z_a: z(s_a),
        z_b: z(s_b),
        z_c: z(s_c),
        z_d: z(s_d),
    };
    let g = gamma.graph();
    let pairs = [
        (s_a, a, s_d, d),
        (s_a, a, s_c, c),
        (s_b, b, s_d, d),
        (s_b, b, s_c, c),
    ];
    let contradiction = pairs.iter().find_map(|&(x, tx, y, ty)| {
        let m = x | y | common;
        let bound = 2 * m.count_ones() as i64 - 4;
        (table.edges(m) as i64 > bound).then(|| Contradiction::SplitSetTooDense {
            subset: table.labels(m),
            edges: table.edges(m),
            bound,
            terminals: [g.label(tx).clone(), g.label(ty).clone()],
        })
    });
    ContradictionReport {
        case,
        contradiction,
        quadrants: Some(quadrants),
    }
}

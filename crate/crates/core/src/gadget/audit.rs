//! Structural audit of a candidate gadget for (2,l).
//!
//! The checks run in a fixed order and the audit stops at the first failure:
//!
//! * (i) size: |E| = 2|V| - 6 in tight mode, at most that in sparse mode
//! * (ii) Γ itself is (2,l)-sparse
//! * (iii) Γ is planar with a, c, b, d around one face
//! * (iv) every S containing all terminals has |E[S]| <= 2|S| - 6
//! * (v) l = 0 only: every S with one terminal from each pair has
//!   |E[S]| <= 2|S| - 4
//! * (vi) there are dense sets S1 (around a, b) and S2 (around c, d) with
//!   at least 2|S| - 3 edges and a path between their terminals
//! * (vii) S1 and S2 lead to an inconsistency
//!
//! Every failure carries a witness that [`CheckWitness::recounts`] against
//! the raw graph.

use serde::Serialize;

use super::contradiction::{derive_masks, is_path, Contradiction, Quadrants};
use super::subsets::{bit, SubsetTable};
use super::{GadgetCandidate, GadgetMode};
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};
use crate::planarity::{disjoint_terminal_paths, has_terminal_face};
use crate::sparsity::{best_effort, SparsityParams, ViolationWitness};

/// Largest gadget the audit accepts; the subset scans are 2^n.
pub(crate) const AUDIT_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CheckId {
    /// Parameters where no planar gadget can exist for counting reasons.
    #[serde(rename = "regime")]
    Regime,
    #[serde(rename = "i")]
    Size,
    #[serde(rename = "ii")]
    Sparsity,
    #[serde(rename = "iii")]
    TerminalFace,
    #[serde(rename = "iv")]
    TerminalSets,
    #[serde(rename = "v")]
    SplitSets,
    #[serde(rename = "vi")]
    DenseSets,
    #[serde(rename = "vii")]
    Contradiction,
}

impl CheckId {
    pub fn name(self) -> &'static str {
        match self {
            CheckId::Regime => "regime",
            CheckId::Size => "i",
            CheckId::Sparsity => "ii",
            CheckId::TerminalFace => "iii",
            CheckId::TerminalSets => "iv",
            CheckId::SplitSets => "v",
            CheckId::DenseSets => "vi",
            CheckId::Contradiction => "vii",
        }
    }
}

impl std::fmt::Display for CheckId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CheckWitness {
    Regime {
        k: u32,
        l: u32,
        reason: String,
    },
    EdgeCount {
        vertices: usize,
        edges: usize,
        required: i64,
        exact: bool,
    },
    NotSparse(ViolationWitness),
    /// `paths` is filled when the failure comes from disjoint a-b and c-d
    /// paths; without them Γ is non-planar or only embeds with the
    /// terminals apart.
    NoTerminalFace {
        paths: Option<(Vec<VertexId>, Vec<VertexId>)>,
    },
    DenseSubset {
        subset: Vec<VertexId>,
        edges: usize,
        bound: i64,
    },
    /// No set around `pair` reaches `2|S| - 3` edges with a connecting path.
    /// When some set joins the pair, `closest` is the joined set that comes
    /// nearest. Otherwise `connected` is false and `closest` is every vertex
    /// but the other two terminals, which still does not join the pair.
    NoDenseSet {
        pair: [VertexId; 2],
        closest: Vec<VertexId>,
        connected: bool,
        edges: usize,
        needed: i64,
    },
    Contradiction(Contradiction),
}

impl CheckWitness {
    /// Recounts the claim from the raw graph.
    pub fn recounts(&self, gamma: &GadgetCandidate, p: SparsityParams) -> bool {
        let g = gamma.graph();
        match self {
            CheckWitness::Regime { k, l, .. } => *k == p.k() && *l == p.l(),
            CheckWitness::EdgeCount {
                vertices,
                edges,
                required,
                exact,
            } => {
                *vertices == g.vertex_count()
                    && *edges == g.edge_count()
                    && *required == size_bound(p, *vertices)
                    && if *exact {
                        *edges as i64 != *required
                    } else {
                        *edges as i64 > *required
                    }
            }
            CheckWitness::NotSparse(w) => w.verify(g, p),
            CheckWitness::NoTerminalFace { paths } => {
                let t = gamma.terminal_strs();
                let face = has_terminal_face(g, t[0], t[1], t[2], t[3]).unwrap_or(true);
                match paths {
                    None => !face,
                    Some((ab, cd)) => {
                        is_path(g, ab)
                            && is_path(g, cd)
                            && ab.iter().all(|v| !cd.contains(v))
                            && ends(ab) == (t[0], t[1])
                            && ends(cd) == (t[2], t[3])
                    }
                }
            }
            CheckWitness::DenseSubset {
                subset,
                edges,
                bound,
            } => g
                .edges_within(subset)
                .is_ok_and(|e| e == *edges && e as i64 > *bound),
            CheckWitness::NoDenseSet {
                pair,
                closest,
                connected,
                edges,
                needed,
            } => {
                let counted = g
                    .edges_within(closest)
                    .is_ok_and(|e| e == *edges && 2 * closest.len() as i64 - 3 == *needed);
                let joined = joined_within(g, closest, pair);
                let excluded: Vec<&VertexId> = gamma
                    .terminals()
                    .iter()
                    .filter(|t| !closest.contains(t))
                    .collect();
                let around = pair.iter().all(|v| closest.contains(v)) && excluded.len() == 2;
                around
                    && counted
                    && if *connected {
                        joined && (*edges as i64) < *needed
                    } else {
                        !joined && closest.len() == g.vertex_count() - 2
                    }
            }
            CheckWitness::Contradiction(c) => c.recounts(g),
        }
    }
}

/// Whether the two vertices of `pair` are joined by a path inside `set`.
fn joined_within(g: &MultiGraph, set: &[VertexId], pair: &[VertexId; 2]) -> bool {
    g.induced_subgraph(set).is_ok_and(|h| {
        let (Some(x), Some(y)) = (h.index_of(pair[0].as_str()), h.index_of(pair[1].as_str()))
        else {
            return false;
        };
        h.components()
            .iter()
            .any(|c| c.contains(&x) && c.contains(&y))
    })
}

fn ends(path: &[VertexId]) -> (&str, &str) {
    (path[0].as_str(), path[path.len() - 1].as_str())
}

/// |E| = k|V| - 4k + 2 for a tight-preserving gadget.
fn size_bound(p: SparsityParams, vertices: usize) -> i64 {
    let k = p.k() as i64;
    k * vertices as i64 - 4 * k + 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: CheckId,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CheckWitness>,
}

impl CheckResult {
    fn pass(check: CheckId) -> Self {
        CheckResult {
            check,
            passed: true,
            witness: None,
        }
    }

    fn fail(check: CheckId, witness: CheckWitness) -> Self {
        CheckResult {
            check,
            passed: false,
            witness: Some(witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DenseWitnesses {
    pub s1: Vec<VertexId>,
    pub s2: Vec<VertexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditVerdict {
    Refuted,
    SurvivesStructural,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub params: SparsityParams,
    pub mode: GadgetMode,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dense_witnesses: Option<DenseWitnesses>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrants: Option<Quadrants>,
    pub verdict: AuditVerdict,
}

impl AuditReport {
    /// The check that refuted the gadget.
    pub fn failed_check(&self) -> Option<CheckId> {
        self.checks.iter().find(|c| !c.passed).map(|c| c.check)
    }

    /// Whether every failing check carries a witness that recounts on `gamma`.
    pub fn recounts(&self, gamma: &GadgetCandidate) -> bool {
        self.checks.iter().filter(|c| !c.passed).all(|c| {
            c.witness
                .as_ref()
                .is_some_and(|w| w.recounts(gamma, self.params))
        })
    }
}

struct Audit {
    report: AuditReport,
}

impl Audit {
    /// Records a result; true means the audit should stop.
    fn record(&mut self, result: CheckResult) -> bool {
        let failed = !result.passed;
        self.report.checks.push(result);
        if failed {
            self.report.verdict = AuditVerdict::Refuted;
        }
        failed
    }
}

pub fn audit_gadget(
    gamma: &GadgetCandidate,
    p: SparsityParams,
    mode: GadgetMode,
) -> Result<AuditReport> {
    let g = gamma.graph();
    if g.vertex_count() > AUDIT_LIMIT {
        return Err(Error::Capacity {
            what: "gadget audit",
            size: g.vertex_count(),
            limit: AUDIT_LIMIT,
            hint: "",
        });
    }
    let k = p.k();
    if k == 1 || (k >= 3 && mode == GadgetMode::Sparse) {
        return Err(Error::Precondition(format!(
            "gadget audits cover k = 2 (and the counting argument for tight k >= 3), not ({k},{}) in {mode:?} mode",
            p.l()
        )));
    }
    let mut audit = Audit {
        report: AuditReport {
            params: p,
            mode,
            checks: Vec::new(),
            dense_witnesses: None,
            case: None,
            quadrants: None,
            verdict: AuditVerdict::SurvivesStructural,
        },
    };
    if k >= 3 {
        // k >= 4, and k = 3 with l <= 5 (all valid l): kn - l > 3n - 6, so
        // no tight graph on three or more vertices is planar.
        audit.record(CheckResult::fail(
            CheckId::Regime,
            CheckWitness::Regime {
                k,
                l: p.l(),
                reason: format!(
                    "({k},{})-tight graphs have more than 3n - 6 edges and are never planar",
                    p.l()
                ),
            },
        ));
        return Ok(audit.report);
    }

    let required = size_bound(p, g.vertex_count());
    let m = g.edge_count() as i64;
    let size_ok = match mode {
        GadgetMode::Tight => m == required,
        GadgetMode::Sparse => m <= required,
    };
    let size = if size_ok {
        CheckResult::pass(CheckId::Size)
    } else {
        CheckResult::fail(
            CheckId::Size,
            CheckWitness::EdgeCount {
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                required,
                exact: mode == GadgetMode::Tight,
            },
        )
    };
    if audit.record(size) {
        return Ok(audit.report);
    }

    let verdict = best_effort(g, p);
    let sparsity = match verdict.witness {
        Some(w) if !verdict.sparse => {
            CheckResult::fail(CheckId::Sparsity, CheckWitness::NotSparse(w))
        }
        _ => CheckResult::pass(CheckId::Sparsity),
    };
    if audit.record(sparsity) {
        return Ok(audit.report);
    }

    let t = gamma.terminal_strs();
    let face = if has_terminal_face(g, t[0], t[1], t[2], t[3])? {
        CheckResult::pass(CheckId::TerminalFace)
    } else {
        let paths = disjoint_terminal_paths(g, t[0], t[1], t[2], t[3])?;
        CheckResult::fail(
            CheckId::TerminalFace,
            CheckWitness::NoTerminalFace { paths },
        )
    };
    if audit.record(face) {
        return Ok(audit.report);
    }

    let table = SubsetTable::new(g);
    let [a, b, c, d] = gamma.terminal_indices();
    let all4 = bit(a) | bit(b) | bit(c) | bit(d);
    let dense_failure = |check: CheckId, pred: &dyn Fn(u64) -> bool, slack: i64| {
        let bound = |mask: u64| 2 * mask.count_ones() as i64 - slack;
        match table.first(|mask| pred(mask) && table.edges(mask) as i64 > bound(mask)) {
            None => CheckResult::pass(check),
            Some(mask) => CheckResult::fail(
                check,
                CheckWitness::DenseSubset {
                    subset: table.labels(mask),
                    edges: table.edges(mask),
                    bound: bound(mask),
                },
            ),
        }
    };

    if audit.record(dense_failure(
        CheckId::TerminalSets,
        &|mask| mask & all4 == all4,
        6,
    )) {
        return Ok(audit.report);
    }

    if p.l() == 0 {
        let split = |mask: u64| {
            (mask & (bit(a) | bit(b))).count_ones() == 1
                && (mask & (bit(c) | bit(d))).count_ones() == 1
        };
        if audit.record(dense_failure(CheckId::SplitSets, &split, 4)) {
            return Ok(audit.report);
        }
    }

    let dense_set = |inside: (usize, usize),
                     outside: (usize, usize)|
     -> std::result::Result<u64, CheckWitness> {
        let around = |mask: u64| {
            mask & bit(inside.0) != 0
                && mask & bit(inside.1) != 0
                && mask & (bit(outside.0) | bit(outside.1)) == 0
        };
        let needed = |mask: u64| 2 * mask.count_ones() as i64 - 3;
        if let Some(mask) = table.first(|mask| {
            around(mask)
                && table.edges(mask) as i64 >= needed(mask)
                && table.path_within(mask, inside.0, inside.1).is_some()
        }) {
            return Ok(mask);
        }
        // report the joined set with the largest edges - (2|S| - 3), smallest first
        let slack = |mask: u64| table.edges(mask) as i64 - needed(mask);
        let mut closest: Option<u64> = None;
        for mask in 0..=table.full() {
            if !around(mask) || table.path_within(mask, inside.0, inside.1).is_none() {
                continue;
            }
            let better = closest.is_none_or(|c| {
                slack(mask) > slack(c) || slack(mask) == slack(c) && table.key(mask) < table.key(c)
            });
            if better {
                closest = Some(mask);
            }
        }
        let connected = closest.is_some();
        let closest = closest.unwrap_or(table.full() & !(bit(outside.0) | bit(outside.1)));
        Err(CheckWitness::NoDenseSet {
            pair: [g.label(inside.0).clone(), g.label(inside.1).clone()],
            closest: table.labels(closest),
            connected,
            edges: table.edges(closest),
            needed: needed(closest),
        })
    };
    let pair =
        dense_set((a, b), (c, d)).and_then(|m1| dense_set((c, d), (a, b)).map(|m2| (m1, m2)));
    let (m1, m2) = match pair {
        Ok(found) => found,
        Err(w) => {
            audit.record(CheckResult::fail(CheckId::DenseSets, w));
            return Ok(audit.report);
        }
    };
    audit.record(CheckResult::pass(CheckId::DenseSets));
    audit.report.dense_witnesses = Some(DenseWitnesses {
        s1: table.labels(m1),
        s2: table.labels(m2),
    });

    let derived = derive_masks(gamma, &table, m1, m2, p);
    audit.report.case = Some(derived.case);
    audit.report.quadrants = derived.quadrants;
    let last = match derived.contradiction {
        Some(c) => CheckResult::fail(CheckId::Contradiction, CheckWitness::Contradiction(c)),
        None => CheckResult::pass(CheckId::Contradiction),
    };
    audit.record(last);
    Ok(audit.report)
}

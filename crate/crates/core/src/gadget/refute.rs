//! Refuting a gadget by example: find a fixture graph G whose status
//! changes when the crossing edges ab and cd are replaced by the gadget.

use serde::Serialize;

use super::fixtures::{crossing_tight, dense_family};
use super::{apply_gadget, GadgetCandidate, GadgetMode};
use crate::graph::MultiGraph;
use crate::sparsity::{best_effort, SparsityParams};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub fixture: String,
    /// How the fixture's a, b, c, d were renamed before substitution.
    pub relabeling: String,
    pub mode: GadgetMode,
    /// Status of G and of G' under the audited parameters.
    pub original: bool,
    pub substituted: bool,
    pub substituted_graph: MultiGraph,
}

impl Refutation {
    pub fn direction(&self) -> &'static str {
        match (self.original, self.substituted) {
            (false, true) => "G fails, G' holds",
            (true, false) => "G holds, G' fails",
            _ => "no change",
        }
    }
}

fn holds(g: &MultiGraph, p: SparsityParams, mode: GadgetMode) -> bool {
    let v = best_effort(g, p);
    match mode {
        GadgetMode::Tight => v.tight,
        GadgetMode::Sparse => v.sparse,
    }
}

type Renaming = (&'static str, [(&'static str, &'static str); 4]);

const IDENTITY: Renaming = ("identity", [("a", "a"), ("b", "b"), ("c", "c"), ("d", "d")]);
/// Rotates the terminals so the fixture's c, d pair is crossed by a, b.
const ROTATED: Renaming = (
    "a->c b->d c->b d->a",
    [("a", "c"), ("b", "d"), ("c", "b"), ("d", "a")],
);
const SWAPS: [Renaming; 4] = [
    IDENTITY,
    ("a<->b", [("a", "b"), ("b", "a"), ("c", "c"), ("d", "d")]),
    ("c<->d", [("a", "a"), ("b", "b"), ("c", "d"), ("d", "c")]),
    (
        "a<->b c<->d",
        [("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")],
    ),
];

fn rename(g: &MultiGraph, map: &[(&str, &str); 4]) -> MultiGraph {
    g.relabel(|v| {
        map.iter()
            .find(|(from, _)| *from == v.as_str())
            .map_or_else(|| v.to_string(), |(_, to)| to.to_string())
    })
    .expect("renaming is a permutation")
}

fn family_name(l: u32, member: usize) -> String {
    format!("dense-l{l}-{}", ["G", "H1", "H2"][member])
}

/// The fixtures to try, in order: the dense-set family for the audited l
/// (as drawn, then rotated), the two (2,0)/(2,1) graphs under terminal
/// swaps, then the families of the other l values.
fn trials(l: u32) -> Vec<(String, &'static str, MultiGraph)> {
    let mut out = Vec::new();
    let family = |out: &mut Vec<_>, fl: u32, renamings: &[Renaming]| {
        let graphs = dense_family(fl);
        for &(name, map) in renamings {
            for (i, g) in graphs.iter().enumerate() {
                out.push((family_name(fl, i), name, rename(g, &map)));
            }
        }
    };
    family(&mut out, l, &[IDENTITY, ROTATED]);
    for fl in [0, 1] {
        let g = crossing_tight(fl);
        for &(name, map) in &SWAPS {
            out.push((format!("crossing-l{fl}"), name, rename(&g, &map)));
        }
    }
    for other in [3, 0, 1, 2].into_iter().filter(|&x| x != l) {
        family(&mut out, other, &[IDENTITY, ROTATED]);
    }
    out
}

/// The first fixture G with `G in L` differing from `G' in L`, where L is
/// the class of (k,l)-tight (or sparse) graphs and G' substitutes `gamma`
/// for the crossing edges ab, cd.
pub fn refute_behaviorally(
    gamma: &GadgetCandidate,
    p: SparsityParams,
    mode: GadgetMode,
) -> Option<Refutation> {
    let l = p.l().min(3);
    for (fixture, relabeling, g) in trials(l) {
        let Ok(g2) = apply_gadget(&g, ("a", "b"), ("c", "d"), gamma) else {
            continue;
        };
        let original = holds(&g, p, mode);
        let substituted = holds(&g2, p, mode);
        if original != substituted {
            return Some(Refutation {
                fixture,
                relabeling: relabeling.to_string(),
                mode,
                original,
                substituted,
                substituted_graph: g2,
            });
        }
    }
    None
}

//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines always
//! show up in the output.

mod common;

use std::time::{Duration, Instant};

use klsparse::flow::{check_sparse_via_flow, solve_instances};
use klsparse::gadget::{
    apply_gadget, audit_gadget, enumerate_candidates, replace_edge, search_gadgets,
    sparse_multiplicity, AuditVerdict, CheckId, FixtureSet, GadgetCandidate, GadgetMode,
};
use klsparse::graph::labels;
use klsparse::planarity::{disjoint_terminal_paths, has_terminal_face, is_planar};
use klsparse::random::{perturb, random_graph, random_sparse_graph, random_tight_graph, rng};
use klsparse::sparsity::{check_sparse_bruteforce, check_sparse_pebble};
use klsparse::{MultiGraph, SparsityParams};
use rand::Rng;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || {
        format!("took {elapsed:.1?}, limit {limit:?}")
    })
}

fn all_params() -> Vec<SparsityParams> {
    SparsityParams::all_up_to(3)
}

fn verdicts_agree(g: &MultiGraph, p: SparsityParams) -> Result<(), String> {
    let brute = check_sparse_bruteforce(g, p).map_err(|e| e.to_string())?;
    let pebble = check_sparse_pebble(g, p);
    let flow = check_sparse_via_flow(g, p);
    let key = |v: &klsparse::SparsityVerdict| (v.sparse, v.tight);
    ensure(
        key(&brute) == key(&pebble) && key(&brute) == key(&flow),
        || {
            format!(
                "({},{}) on {}: brute {:?}, pebble {:?}, flow {:?}",
                p.k(),
                p.l(),
                g.to_json(),
                key(&brute),
                key(&pebble),
                key(&flow)
            )
        },
    )
}

fn recognizers_agree() -> Outcome {
    let start = Instant::now();
    let corpus = exhaustive_corpus();
    for g in &corpus {
        for p in all_params() {
            verdicts_agree(g, p)?;
        }
    }
    let mut r = rng(1);
    let params = all_params();
    for _ in 0..10_000 {
        let g = random_graph(&mut r, 12);
        let p = params[r.gen_range(0..params.len())];
        verdicts_agree(&g, p)?;
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "{} exhaustive graphs x {} parameter pairs and 10000 random graphs agree ({:.1?})",
        corpus.len(),
        params.len(),
        start.elapsed()
    ))
}

fn fixtures_have_documented_status() -> Outcome {
    let start = Instant::now();
    let set = FixtureSet::load().map_err(|e| e.to_string())?;
    let get = |name: &str| {
        set.get(name)
            .ok_or_else(|| format!("missing fixture {name}"))
    };
    let dense = get("dense-l3-G")?;
    let w = check_sparse_bruteforce(&dense.graph, dense.params)
        .map_err(|e| e.to_string())?
        .witness
        .ok_or("dense-l3-G has no witness")?;
    let mut subset = w.subset.clone();
    subset.sort();
    ensure(
        subset == labels(&["a", "b", "e", "f"]).unwrap() && w.edge_count == 6,
        || {
            format!(
                "dense-l3-G witness {:?} with {} edges",
                w.subset, w.edge_count
            )
        },
    )?;
    for f in &set.fixtures {
        let tight = naive_tight(&f.graph, f.params);
        let sparse = naive_sparse(&f.graph, f.params);
        ensure(
            tight == f.expected.tight && sparse == f.expected.sparse,
            || format!("{} is sparse={sparse} tight={tight}", f.name),
        )?;
    }
    for (name, l) in [("crossing-l0", 0usize), ("crossing-l1", 1)] {
        let g = &get(name)?.graph;
        let rest: Vec<&str> = g
            .vertices()
            .iter()
            .map(|v| v.as_str())
            .filter(|v| !["b", "c"].contains(v))
            .collect();
        let e = g.edges_within(&rest).unwrap();
        ensure(e == 10 - l, || format!("{name}: E[V-{{b,c}}] = {e}"))?;
    }
    for l in 0..=2 {
        let f = get(&format!("dense-l{l}-G"))?;
        let g = &f.graph;
        ensure(
            g.edge_count() as i64 == f.params.bound(g.vertex_count()),
            || format!("dense-l{l}-G has {} edges", g.edge_count()),
        )?;
        let rest: Vec<&str> = g
            .vertices()
            .iter()
            .map(|v| v.as_str())
            .filter(|v| !["c", "d"].contains(v))
            .collect();
        let e = g.edges_within(&rest).unwrap() as i64;
        ensure(e > f.params.bound(rest.len()), || {
            format!("dense-l{l}-G: V-{{c,d}} has {e} edges")
        })?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "{} fixtures match their documented status ({:.1?})",
        set.fixtures.len(),
        start.elapsed()
    ))
}

fn dense_sets_are_connected() -> Outcome {
    let start = Instant::now();
    let params: Vec<SparsityParams> = all_params()
        .into_iter()
        .filter(|p| p.k() <= p.l())
        .collect();
    let mut r = rng(3);
    let mut dense_checked = 0usize;
    for trial in 0..1000 {
        let p = params[trial % params.len()];
        let n = r.gen_range(2..=10);
        // tight graphs have the most dense subsets; mix in plain sparse ones
        let g = if trial % 2 == 0 {
            random_tight_graph(&mut r, n, p).unwrap_or_else(|| random_sparse_graph(&mut r, n, p))
        } else {
            random_sparse_graph(&mut r, n, p)
        };
        ensure(naive_sparse(&g, p), || {
            format!("generator produced a non-sparse graph {}", g.to_json())
        })?;
        let (k, l) = (p.k() as i64, p.l());
        for mask in 1u64..1 << n {
            if edges_in(&g, mask) as i64 > k * mask.count_ones() as i64 - 2 * k {
                dense_checked += 1;
                ensure(connected_within(&g, mask), || {
                    format!(
                        "({k},{l}): mask {mask:#b} of {} is dense but disconnected",
                        g.to_json()
                    )
                })?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "1000 sparse graphs, {dense_checked} dense subsets all connected ({:.1?})",
        start.elapsed()
    ))
}

fn edge_replacement_preserves_tightness() -> Outcome {
    let start = Instant::now();
    let mut r = rng(4);
    let mut tight_inputs = 0usize;
    for p in all_params() {
        let strict = SparsityParams::new(p.k() as i64, 2 * p.k() as i64 - 1).unwrap();
        let mut trials = 0;
        while trials < 1000 {
            let n = r.gen_range(2..=8);
            let g = match (random_tight_graph(&mut r, n, p), r.gen_range(0..3)) {
                (Some(t), 0) => t,
                (Some(t), 1) => perturb(&mut r, &t),
                _ => random_graph(&mut r, 8),
            };
            if g.edge_count() == 0 {
                continue;
            }
            let omega_n = r.gen_range(2..=5);
            let Some(omega) = random_tight_graph(&mut r, omega_n, strict) else {
                continue;
            };
            trials += 1;
            let (u, v) = g.edge_indices()[r.gen_range(0..g.edge_count())];
            let ou = r.gen_range(0..omega.vertex_count());
            let mut ov = r.gen_range(0..omega.vertex_count() - 1);
            if ov >= ou {
                ov += 1;
            }
            let star = replace_edge(
                &g,
                (g.label(u).as_str(), g.label(v).as_str()),
                &omega,
                (omega.label(ou).as_str(), omega.label(ov).as_str()),
                p,
            )
            .map_err(|e| e.to_string())?;
            ensure(
                star.vertex_count() == g.vertex_count() + omega.vertex_count() - 2,
                || "vertex count".into(),
            )?;
            ensure(
                star.edge_count() == g.edge_count() + omega.edge_count() - 1,
                || "edge count".into(),
            )?;
            let before = naive_tight(&g, p);
            tight_inputs += before as usize;
            ensure(before == naive_tight(&star, p), || {
                format!(
                    "({},{}): g {} tight={before}, omega {}, result differs",
                    p.k(),
                    p.l(),
                    g.to_json(),
                    omega.to_json()
                )
            })?;
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "12000 replacements ({tight_inputs} with tight input) preserve tightness and counts ({:.1?})",
        start.elapsed()
    ))
}

fn flow_instances_decide_sparsity() -> Outcome {
    let start = Instant::now();
    let corpus = exhaustive_corpus();
    let mut short_instances = 0usize;
    for g in &corpus {
        let m = g.edge_count() as u64;
        for p in all_params() {
            let target = m + p.l() as u64;
            let outcomes = solve_instances(g, p);
            let all_full = outcomes.iter().all(|o| o.value == target);
            let sparse = naive_sparse(g, p);
            ensure(sparse == all_full, || {
                format!(
                    "({},{}) on {}: sparse={sparse} but all instances full={all_full}",
                    p.k(),
                    p.l(),
                    g.to_json()
                )
            })?;
            for o in outcomes.iter().filter(|o| o.value < target) {
                short_instances += 1;
                let ok = o.cut_witness.as_ref().is_some_and(|w| w.verify(g, p));
                ensure(ok, || {
                    format!(
                        "({},{}) on {}: instance {} cut does not recount",
                        p.k(),
                        p.l(),
                        g.to_json(),
                        o.boosted_edge
                    )
                })?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "{} graphs x 12 parameter pairs; {short_instances} short instances all yield violating cuts ({:.1?})",
        corpus.len(),
        start.elapsed()
    ))
}

fn no_small_gadget_survives() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for mode in [GadgetMode::Tight, GadgetMode::Sparse] {
        for l in 0..=3 {
            let p = SparsityParams::new(2, l).unwrap();
            let t = Instant::now();
            let rep =
                search_gadgets(p, 2, sparse_multiplicity(p), mode).map_err(|e| e.to_string())?;
            within(t.elapsed(), Duration::from_secs(600))?;
            ensure(rep.survivors.is_empty(), || {
                format!(
                    "{mode:?} l={l}: {} survivors, first {}",
                    rep.survivors.len(),
                    rep.survivors[0].to_json_value()
                )
            })?;
            if mode == GadgetMode::Tight {
                for check in ["i", "iii", "vi"] {
                    ensure(rep.histogram.get(check).copied().unwrap_or(0) > 0, || {
                        format!(
                            "tight l={l}: nothing eliminated by check {check}: {:?}",
                            rep.histogram
                        )
                    })?;
                }
            }
            notes.push(format!(
                "{}{l}:{}",
                if mode == GadgetMode::Tight { "t" } else { "s" },
                rep.candidates
            ));
        }
    }
    Ok(format!(
        "0 survivors at r <= 2, candidates {} ({:.1?})",
        notes.join(" "),
        start.elapsed()
    ))
}

fn star_gadget_is_invalid() -> Outcome {
    let start = Instant::now();
    let set = FixtureSet::standard();
    let g = &set.get("dense-l3-G").ok_or("missing dense-l3-G")?.graph;
    let star = GadgetCandidate::star();
    let p = SparsityParams::new(2, 3).unwrap();
    let g2 = apply_gadget(g, ("a", "b"), ("c", "d"), &star).map_err(|e| e.to_string())?;
    ensure(!naive_tight(g, p), || "dense-l3-G is tight".into())?;
    ensure(g2.vertex_count() == 7 && g2.edge_count() == 11, || {
        format!(
            "G' has {} vertices, {} edges",
            g2.vertex_count(),
            g2.edge_count()
        )
    })?;
    ensure(naive_tight(&g2, p), || "G' is not tight".into())?;
    let rep = audit_gadget(&star, p, GadgetMode::Tight).map_err(|e| e.to_string())?;
    ensure(
        rep.verdict == AuditVerdict::Refuted && rep.failed_check() == Some(CheckId::DenseSets),
        || format!("audit failed at {:?}", rep.failed_check()),
    )?;
    ensure(rep.recounts(&star), || {
        "audit witness does not recount".into()
    })?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "star flips dense-l3-G to tight and fails check vi ({:.1?})",
        start.elapsed()
    ))
}

/// Disjoint a-b and c-d paths exist iff some vertex set P holds a and b,
/// avoids c and d, is connected, and leaves c and d connected outside it.
fn disjoint_paths_naive(gamma: &GadgetCandidate) -> bool {
    let g = gamma.graph();
    let [a, b, c, d] = gamma.terminal_indices();
    let n = g.vertex_count();
    let full = (1u64 << n) - 1;
    (0..=full).any(|pm| {
        pm >> a & 1 == 1
            && pm >> b & 1 == 1
            && pm >> c & 1 == 0
            && pm >> d & 1 == 0
            && component_of(g, pm, a) >> b & 1 == 1
            && component_of(g, full & !pm, c) >> d & 1 == 1
    })
}

fn component_of(g: &MultiGraph, mask: u64, from: usize) -> u64 {
    let mut seen = 1u64 << from;
    loop {
        let before = seen;
        for &(u, v) in g.edge_indices() {
            if mask >> u & 1 == 1
                && mask >> v & 1 == 1
                && (seen >> u & 1 == 1 || seen >> v & 1 == 1)
            {
                seen |= 1 << u | 1 << v;
            }
        }
        if seen == before {
            return seen;
        }
    }
}

fn planarity_spot_checks() -> Outcome {
    let start = Instant::now();
    let err = |e: klsparse::Error| e.to_string();
    ensure(!is_planar(&complete(5)).map_err(err)?, || {
        "K5 accepted".into()
    })?;
    ensure(!is_planar(&complete_bipartite(3, 3)).map_err(err)?, || {
        "K3,3 accepted".into()
    })?;
    ensure(is_planar(&complete(4)).map_err(err)?, || {
        "K4 rejected".into()
    })?;
    let cycle = MultiGraph::from_edges(&[("a", "c"), ("c", "b"), ("b", "d"), ("d", "a")]).unwrap();
    ensure(
        has_terminal_face(&cycle, "a", "b", "c", "d").map_err(err)?,
        || "4-cycle has no terminal face".into(),
    )?;
    let k4 = MultiGraph::from_edges(&[
        ("a", "b"),
        ("a", "c"),
        ("a", "d"),
        ("b", "c"),
        ("b", "d"),
        ("c", "d"),
    ])
    .unwrap();
    ensure(
        !has_terminal_face(&k4, "a", "b", "c", "d").map_err(err)?,
        || "K4 has a terminal face".into(),
    )?;
    let mut with_face = 0usize;
    let mut total = 0usize;
    for (r, mu) in [(0usize, 1usize), (1, 2), (2, 2), (3, 1)] {
        // every edge count the allowed pairs admit
        let counts: Vec<usize> = (0..=mu * (4 * r + r * r.saturating_sub(1) / 2)).collect();
        for gamma in enumerate_candidates(r, &counts, mu).map_err(err)? {
            total += 1;
            let t = gamma.terminals().clone();
            let (a, b, c, d) = (t[0].as_str(), t[1].as_str(), t[2].as_str(), t[3].as_str());
            let face = has_terminal_face(gamma.graph(), a, b, c, d).map_err(err)?;
            let paths = disjoint_terminal_paths(gamma.graph(), a, b, c, d).map_err(err)?;
            ensure(paths.is_some() == disjoint_paths_naive(&gamma), || {
                format!(
                    "disjoint path search disagrees on {}",
                    gamma.to_json_value()
                )
            })?;
            if face {
                with_face += 1;
                ensure(paths.is_none(), || {
                    format!(
                        "terminal face but disjoint paths in {}",
                        gamma.to_json_value()
                    )
                })?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!(
        "K5, K3,3 rejected; {total} candidates checked, all {with_face} with a terminal face lack disjoint paths ({:.1?})",
        start.elapsed()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("three-way recognizer agreement", recognizers_agree),
        ("fixture suite", fixtures_have_documented_status),
        (
            "dense subsets of sparse graphs are connected",
            dense_sets_are_connected,
        ),
        (
            "edge replacement preserves tightness",
            edge_replacement_preserves_tightness,
        ),
        (
            "flow instances decide sparsity",
            flow_instances_decide_sparsity,
        ),
        ("no small gadget survives", no_small_gadget_survives),
        ("star gadget counterexample", star_gadget_is_invalid),
        ("planarity spot checks", planarity_spot_checks),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

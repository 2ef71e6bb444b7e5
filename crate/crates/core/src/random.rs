//! Seeded graph generators for property suites and cross-checks.
//!
//! Vertices are labeled `v0, v1, ...`. All generators take the RNG by
//! reference, so a fixed seed reproduces a whole run.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{GraphBuilder, MultiGraph};
use crate::sparsity::{PebbleGame, SparsityParams};

pub type GraphRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GraphRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn vertices(n: usize) -> GraphBuilder {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.vertex(&format!("v{i}"))
            .expect("generated labels are valid");
    }
    b
}

fn random_pair(rng: &mut GraphRng, n: usize) -> (usize, usize) {
    let u = rng.gen_range(0..n);
    let mut v = rng.gen_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    (u, v)
}

/// `m` edges between uniformly random distinct endpoints; repeats allowed.
pub fn random_multigraph(rng: &mut GraphRng, n: usize, m: usize) -> MultiGraph {
    let mut b = vertices(n);
    if n >= 2 {
        for _ in 0..m {
            let (u, v) = random_pair(rng, n);
            b.edge_by_index(u, v).expect("distinct endpoints");
        }
    }
    b.build()
}

/// A random simple graph where each pair is present with probability `density`.
pub fn random_simple_graph(rng: &mut GraphRng, n: usize, density: f64) -> MultiGraph {
    let mut b = vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                b.edge_by_index(u, v).expect("distinct endpoints");
            }
        }
    }
    b.build()
}

/// A random graph on 2..=max_n vertices with up to about 3n edges, roughly
/// balanced between sparse and dense ones.
pub fn random_graph(rng: &mut GraphRng, max_n: usize) -> MultiGraph {
    let n = rng.gen_range(2..=max_n.max(2));
    let m = rng.gen_range(0..=3 * n);
    random_multigraph(rng, n, m)
}

/// Grows a (k,l)-sparse graph on `n` vertices by offering random pairs to the
/// pebble game until `target` edges are accepted or offers run out.
fn grow_sparse(rng: &mut GraphRng, n: usize, p: SparsityParams, target: usize) -> MultiGraph {
    let mut b = vertices(n);
    if n < 2 {
        return b.build();
    }
    let blank = vertices(n).build();
    let mut game = PebbleGame::new(&blank, p);
    let mut accepted = 0;
    let mut offers = 0;
    let budget = 40 * (target + n * n);
    while accepted < target && offers < budget {
        offers += 1;
        let (u, v) = random_pair(rng, n);
        if game.try_insert(u, v).is_ok() {
            b.edge_by_index(u, v).expect("distinct endpoints");
            accepted += 1;
        }
    }
    // finish deterministically: every pair, offered as often as it can take
    if accepted < target {
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        pairs.shuffle(rng);
        'outer: for (u, v) in pairs {
            while game.try_insert(u, v).is_ok() {
                b.edge_by_index(u, v).expect("distinct endpoints");
                accepted += 1;
                if accepted == target {
                    break 'outer;
                }
            }
        }
    }
    b.build()
}

/// A random (k,l)-sparse graph on `n` vertices with a random edge count.
pub fn random_sparse_graph(rng: &mut GraphRng, n: usize, p: SparsityParams) -> MultiGraph {
    let max = p.bound(n).max(0) as usize;
    let target = rng.gen_range(0..=max);
    grow_sparse(rng, n, p, target)
}

/// A random (k,l)-tight graph on `n` vertices with shuffled edges, or
/// `None` when no such graph exists (for example (3,5) with n = 3). The
/// greedy growth ends in a maximal sparse graph, so it falls short of kn-l
/// edges only when every sparse graph on `n` vertices does.
pub fn random_tight_graph(rng: &mut GraphRng, n: usize, p: SparsityParams) -> Option<MultiGraph> {
    if p.bound(n) < 0 {
        return None;
    }
    let target = p.bound(n) as usize;
    let g = grow_sparse(rng, n, p, target);
    if g.edge_count() < target {
        return None;
    }
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    Some(g.edge_subgraph(&order))
}

/// Moves one random edge to a random new pair of endpoints. Applied to a
/// tight graph this usually, but not always, breaks sparsity.
pub fn perturb(rng: &mut GraphRng, g: &MultiGraph) -> MultiGraph {
    let n = g.vertex_count();
    if g.edge_count() == 0 || n < 2 {
        return g.clone();
    }
    let drop = rng.gen_range(0..g.edge_count());
    let keep: Vec<usize> = (0..g.edge_count()).filter(|&i| i != drop).collect();
    let base = g.edge_subgraph(&keep);
    let (u, v) = random_pair(rng, n);
    base.with_edge(g.label(u).as_str(), g.label(v).as_str())
        .expect("endpoints exist and differ")
}

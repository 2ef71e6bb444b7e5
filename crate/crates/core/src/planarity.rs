//! Planarity testing for small graphs, with rotation-system certificates.
//!
//! Each biconnected block is embedded by path addition (Demoucron, Malgrange
//! and Pertuiset): start from a cycle, and repeatedly route a path of some
//! not-yet-embedded fragment through a face that contains all of the
//! fragment's attachment vertices, preferring fragments that have only one
//! such face. A fragment with no admissible face proves non-planarity. The
//! block rotations are then concatenated at cut vertices.
//!
//! Parallel edges never affect planarity, so everything here works on the
//! simplified graph.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{input, Error, Result};
use crate::graph::{MultiGraph, VertexId};

/// Largest graph [`is_planar`] accepts.
pub const PLANARITY_LIMIT: usize = 14;

/// Cyclic order of neighbors around each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    labels: Vec<VertexId>,
    order: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    /// Neighbors of vertex `v` (by position) in rotation order.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    fn successor(&self, v: usize, u: usize) -> Option<usize> {
        let ring = &self.order[v];
        let i = ring.iter().position(|&x| x == u)?;
        Some(ring[(i + 1) % ring.len()])
    }

    /// Face boundary walks: the dart u->v is followed by v->w where w comes
    /// after u in the rotation at v. Each walk lists its vertices in order.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut used: HashSet<(usize, usize)> = HashSet::new();
        let mut faces = Vec::new();
        for u in 0..self.order.len() {
            for &v in &self.order[u] {
                if used.contains(&(u, v)) {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut x, mut y) = (u, v);
                while used.insert((x, y)) {
                    walk.push(x);
                    let Some(z) = self.successor(y, x) else {
                        return Vec::new();
                    };
                    (x, y) = (y, z);
                }
                faces.push(walk);
            }
        }
        faces
    }

    /// True when the rotations describe a simple graph (symmetric, no
    /// repeats) whose traced faces satisfy V - E + F = 2 on every component
    /// that has an edge.
    pub fn satisfies_euler(&self) -> bool {
        let n = self.order.len();
        let mut darts = 0usize;
        for (v, ring) in self.order.iter().enumerate() {
            let distinct: HashSet<&usize> = ring.iter().collect();
            if distinct.len() != ring.len() || ring.iter().any(|&u| u >= n || u == v) {
                return false;
            }
            if ring.iter().any(|&u| !self.order[u].contains(&v)) {
                return false;
            }
            darts += ring.len();
        }
        let edges = darts / 2;
        let mut comp = vec![usize::MAX; n];
        let mut components_with_edges = 0;
        let mut touched = 0;
        for s in 0..n {
            if comp[s] != usize::MAX || self.order[s].is_empty() {
                continue;
            }
            components_with_edges += 1;
            comp[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                touched += 1;
                for &y in &self.order[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = s;
                        queue.push_back(y);
                    }
                }
            }
        }
        let faces = self.faces().len();
        touched as i64 - edges as i64 + faces as i64 == 2 * components_with_edges as i64
    }

    /// Whether this is a planar embedding of the simplified `g`.
    pub fn embeds(&self, g: &MultiGraph) -> bool {
        if self.labels != g.vertices() {
            return false;
        }
        let adj = simple_adjacency(g);
        self.order.iter().zip(&adj).all(|(ring, nbrs)| {
            let mut sorted = ring.clone();
            sorted.sort_unstable();
            &sorted == nbrs
        }) && self.satisfies_euler()
    }

    /// Graphviz rendering: each vertex is a record whose ports `p0, p1, ...`
    /// follow its rotation, and each edge joins the matching ports.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph rotation {\n  node [shape=record];\n");
        for (v, ring) in self.order.iter().enumerate() {
            let ports: Vec<String> = (0..ring.len()).map(|i| format!("<p{i}> {i}")).collect();
            let _ = writeln!(
                out,
                "  n{v} [label=\"{}|{{{}}}\"];",
                self.labels[v],
                ports.join("|")
            );
        }
        for (v, ring) in self.order.iter().enumerate() {
            for (i, &u) in ring.iter().enumerate() {
                if v < u {
                    let j = self.order[u].iter().position(|&x| x == v).unwrap_or(0);
                    let _ = writeln!(out, "  n{v}:p{i} -- n{u}:p{j};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Sorted, deduplicated neighbor lists.
fn simple_adjacency(g: &MultiGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for &(u, v) in g.edge_indices() {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

pub fn is_planar(g: &MultiGraph) -> Result<bool> {
    Ok(planar_embedding(g)?.is_some())
}

/// A planar rotation system for `g`, or `None` if `g` is not planar.
pub fn planar_embedding(g: &MultiGraph) -> Result<Option<RotationSystem>> {
    if g.vertex_count() > PLANARITY_LIMIT {
        return Err(Error::Capacity {
            what: "planarity test",
            size: g.vertex_count(),
            limit: PLANARITY_LIMIT,
            hint: "",
        });
    }
    Ok(embed(&simple_adjacency(g)).map(|order| RotationSystem {
        labels: g.vertices().to_vec(),
        order,
    }))
}

/// Rotation lists for a simple graph given by sorted adjacency, or `None`.
fn embed(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let m: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if n >= 3 && m > 3 * n - 6 {
        return None;
    }
    let mut order = vec![Vec::new(); n];
    for block in biconnected_blocks(adj) {
        if block.len() == 1 {
            let (u, v) = block[0];
            order[u].push(v);
            order[v].push(u);
            continue;
        }
        let faces = embed_block(n, &block)?;
        for (v, ring) in rotations_from_faces(n, &faces).into_iter().enumerate() {
            order[v].extend(ring);
        }
    }
    Some(order)
}

/// Edge sets of the biconnected blocks, each edge as (min, max).
fn biconnected_blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<(usize, usize)>>,
    }
    fn visit(st: &mut State, u: usize, parent: usize) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for i in 0..st.adj[u].len() {
            let v = st.adj[u][i];
            if st.disc[v] == 0 {
                st.stack.push((u.min(v), u.max(v)));
                visit(st, v, u);
                st.low[u] = st.low[u].min(st.low[v]);
                if st.low[v] >= st.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        block.push(e);
                        if e == (u.min(v), u.max(v)) {
                            break;
                        }
                    }
                    st.blocks.push(block);
                }
            } else if v != parent && st.disc[v] < st.disc[u] {
                st.stack.push((u.min(v), u.max(v)));
                st.low[u] = st.low[u].min(st.disc[v]);
            }
        }
    }
    let n = adj.len();
    let mut st = State {
        adj,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for s in 0..n {
        if st.disc[s] == 0 {
            visit(&mut st, s, usize::MAX);
        }
    }
    st.blocks
}

/// Faces of a planar embedding of a biconnected block, as directed vertex
/// cycles, or `None` if the block is not planar.
fn embed_block(n: usize, block: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); n];
    let mut in_block = vec![false; n];
    for &(u, v) in block {
        adj[u].push(v);
        adj[v].push(u);
        in_block[u] = true;
        in_block[v] = true;
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let (u0, v0) = *block.iter().min()?;
    let cycle = {
        let mut path = bfs_path(&adj, v0, |x| x == u0, |x, y| (x, y) != (v0, u0))?;
        path.pop();
        let mut c = vec![u0];
        c.extend(path);
        c
    };
    let mut in_h = vec![false; n];
    let mut h_edges: HashSet<(usize, usize)> = HashSet::new();
    for (i, &x) in cycle.iter().enumerate() {
        in_h[x] = true;
        let y = cycle[(i + 1) % cycle.len()];
        h_edges.insert((x.min(y), x.max(y)));
    }
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while h_edges.len() < block.len() {
        let fragments = fragments(&adj, &in_block, &in_h, &h_edges, block);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    choice.get_or_insert((fi, admissible[0]));
                }
            }
        }
        let (fi, face) = choice?;
        let path = fragments[fi].path(&adj, &in_h);
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &x in &path {
            in_h[x] = true;
        }
        let (left, right) = split_face(&faces[face], &path);
        faces[face] = left;
        faces.push(right);
    }
    Some(faces)
}

struct Fragment {
    attachments: Vec<usize>,
    /// Interior vertices (empty for a chord).
    interior: Vec<usize>,
}

impl Fragment {
    /// A path between two distinct attachments through the interior.
    fn path(&self, adj: &[Vec<usize>], in_h: &[bool]) -> Vec<usize> {
        let a = self.attachments[0];
        if self.interior.is_empty() {
            return vec![a, self.attachments[1]];
        }
        let interior: HashSet<usize> = self.interior.iter().copied().collect();
        bfs_path(
            adj,
            a,
            |x| x != a && in_h[x],
            |x, y| {
                (x == a || interior.contains(&x)) && (interior.contains(&y) || (in_h[y] && x != a))
            },
        )
        .expect("fragment has two attachments")
    }
}

fn fragments(
    adj: &[Vec<usize>],
    in_block: &[bool],
    in_h: &[bool],
    h_edges: &HashSet<(usize, usize)>,
    block: &[(usize, usize)],
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &(u, v) in block {
        if in_h[u] && in_h[v] && !h_edges.contains(&(u, v)) {
            out.push(Fragment {
                attachments: vec![u, v],
                interior: Vec::new(),
            });
        }
    }
    let n = adj.len();
    let mut seen = vec![false; n];
    for s in 0..n {
        if !in_block[s] || in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut interior = Vec::new();
        let mut attachments = Vec::new();
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            interior.push(x);
            for &y in &adj[x] {
                if in_h[y] {
                    attachments.push(y);
                } else if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        out.push(Fragment {
            attachments,
            interior,
        });
    }
    out
}

/// Shortest path from `start` to the first vertex satisfying `stop`, using
/// only steps allowed by `step`. Neighbors are scanned in index order.
fn bfs_path(
    adj: &[Vec<usize>],
    start: usize,
    stop: impl Fn(usize) -> bool,
    step: impl Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if parent[y] != usize::MAX || !step(x, y) {
                continue;
            }
            parent[y] = x;
            if stop(y) {
                let mut path = vec![y];
                let mut z = y;
                while z != start {
                    z = parent[z];
                    path.push(z);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(y);
        }
    }
    None
}

/// Splits a directed face cycle along a path joining two of its vertices.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().expect("path has two ends");
    let inner = &path[1..path.len() - 1];
    let i = face
        .iter()
        .position(|&x| x == a)
        .expect("attachment on face");
    let j = face
        .iter()
        .position(|&x| x == b)
        .expect("attachment on face");
    let arc = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut t = from;
        loop {
            out.push(face[t]);
            if t == to {
                break;
            }
            t = (t + 1) % face.len();
        }
        out
    };
    let mut left = arc(i, j);
    left.extend(inner.iter().rev());
    let mut right = arc(j, i);
    right.extend(inner.iter());
    (left, right)
}

/// For each face walk ... u -> v -> w ..., w follows u around v.
fn rotations_from_faces(n: usize, faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut next: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for f in faces {
        let len = f.len();
        for i in 0..len {
            let (u, v, w) = (f[i], f[(i + 1) % len], f[(i + 2) % len]);
            next[v].push((u, w));
        }
    }
    next.into_iter()
        .map(|pairs| {
            let Some(&(start, _)) = pairs.iter().min() else {
                return Vec::new();
            };
            let mut ring = vec![start];
            let mut cur = start;
            loop {
                let succ = pairs
                    .iter()
                    .find(|&&(u, _)| u == cur)
                    .map(|&(_, w)| w)
                    .expect("every dart has a successor");
                if succ == start {
                    break;
                }
                ring.push(succ);
                cur = succ;
            }
            ring
        })
        .collect()
}

fn terminals(g: &MultiGraph, t: [&str; 4]) -> Result<[usize; 4]> {
    let idx = g.indices_of(&t)?;
    let distinct: HashSet<usize> = idx.iter().copied().collect();
    if distinct.len() != 4 {
        return Err(input("terminals must be four distinct vertices"));
    }
    Ok([idx[0], idx[1], idx[2], idx[3]])
}

/// Whether `g` has a planar embedding with a face whose boundary meets
/// a, c, b, d in that cyclic order (either direction).
///
/// Decided by adding the 4-cycle a-c-b-d and a new vertex joined to all four
/// terminals: the wheel this creates has a unique embedding, and the
/// augmented graph is planar exactly when such a face exists.
pub fn has_terminal_face(g: &MultiGraph, a: &str, b: &str, c: &str, d: &str) -> Result<bool> {
    let [a, b, c, d] = terminals(g, [a, b, c, d])?;
    let n = g.vertex_count();
    let mut adj = simple_adjacency(g);
    adj.push(Vec::new());
    let apex = n;
    let add = |x: usize, y: usize, adj: &mut Vec<Vec<usize>>| {
        if !adj[x].contains(&y) {
            adj[x].push(y);
            adj[y].push(x);
        }
    };
    for (x, y) in [
        (a, c),
        (c, b),
        (b, d),
        (d, a),
        (apex, a),
        (apex, b),
        (apex, c),
        (apex, d),
    ] {
        add(x, y, &mut adj);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(embed(&adj).is_some())
}

/// Vertex-disjoint paths a..b and c..d, found by trying every simple a..b
/// path (in neighbor order) and searching for a c..d path around it.
pub fn disjoint_terminal_paths(
    g: &MultiGraph,
    a: &str,
    b: &str,
    c: &str,
    d: &str,
) -> Result<Option<(Vec<VertexId>, Vec<VertexId>)>> {
    let [a, b, c, d] = terminals(g, [a, b, c, d])?;
    let adj = simple_adjacency(g);
    let n = adj.len();
    let mut on_path = vec![false; n];
    on_path[a] = true;
    let mut path = vec![a];
    // iterative DFS over simple paths: (vertex, next neighbor index)
    let mut stack = vec![(a, 0usize)];
    while let Some(&mut (x, ref mut next)) = stack.last_mut() {
        if x == b {
            let blocked = on_path.clone();
            if let Some(cd) = bfs_path(&adj, c, |y| y == d, |_, y| !blocked[y]) {
                let names = |p: &[usize]| p.iter().map(|&i| g.label(i).clone()).collect();
                return Ok(Some((names(&path), names(&cd))));
            }
        }
        if x == b || *next >= adj[x].len() {
            stack.pop();
            on_path[x] = false;
            path.pop();
            continue;
        }
        let y = adj[x][*next];
        *next += 1;
        if on_path[y] || y == c || y == d {
            continue;
        }
        on_path[y] = true;
        path.push(y);
        stack.push((y, 0));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(names: &[&str]) -> MultiGraph {
        let mut edges = Vec::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                edges.push((names[i], names[j]));
            }
        }
        MultiGraph::from_edges(&edges).unwrap()
    }

    fn k33() -> MultiGraph {
        let mut edges = Vec::new();
        for x in ["x1", "x2", "x3"] {
            for y in ["y1", "y2", "y3"] {
                edges.push((x, y));
            }
        }
        MultiGraph::from_edges(&edges).unwrap()
    }

    #[test]
    fn kuratowski_graphs() {
        let k4 = complete(&["a", "b", "c", "d"]);
        let emb = planar_embedding(&k4).unwrap().unwrap();
        assert!(emb.embeds(&k4));
        assert_eq!(emb.faces().len(), 4);
        assert!(!is_planar(&complete(&["a", "b", "c", "d", "e"])).unwrap());
        assert!(!is_planar(&k33()).unwrap());
    }

    #[test]
    fn k33_minus_edge_is_planar() {
        let g = k33().without_edge("x1", "y1").unwrap();
        assert!(planar_embedding(&g).unwrap().unwrap().embeds(&g));
    }

    #[test]
    fn forest_and_cut_vertices() {
        let g = MultiGraph::from_edges(&[
            ("a", "b"),
            ("b", "c"),
            ("c", "a"),
            ("c", "d"),
            ("d", "e"),
            ("e", "c"),
            ("e", "f"),
        ])
        .unwrap();
        let emb = planar_embedding(&g).unwrap().unwrap();
        assert!(emb.embeds(&g));
    }

    #[test]
    fn size_limit() {
        let names: Vec<String> = (0..15).map(|i| format!("v{i}")).collect();
        let g = MultiGraph::from_parts::<String>(&names, &[]).unwrap();
        assert!(matches!(is_planar(&g), Err(Error::Capacity { .. })));
    }

    #[test]
    fn terminal_face_examples() {
        let cycle =
            MultiGraph::from_edges(&[("a", "c"), ("c", "b"), ("b", "d"), ("d", "a")]).unwrap();
        assert!(has_terminal_face(&cycle, "a", "b", "c", "d").unwrap());
        let k4 = complete(&["a", "b", "c", "d"]);
        assert!(!has_terminal_face(&k4, "a", "b", "c", "d").unwrap());
        let star =
            MultiGraph::from_edges(&[("x", "a"), ("x", "b"), ("x", "c"), ("x", "d")]).unwrap();
        assert!(has_terminal_face(&star, "a", "b", "c", "d").unwrap());
        assert!(has_terminal_face(&star, "a", "b", "c", "q").is_err());
    }

    #[test]
    fn wrong_cyclic_order_has_no_face() {
        // the 4-cycle a-b-c-d puts a and b next to each other
        let cycle =
            MultiGraph::from_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
        assert!(has_terminal_face(&cycle, "a", "c", "b", "d").unwrap());
        let twice = cycle.with_edge("a", "c").unwrap();
        assert!(has_terminal_face(&twice, "a", "c", "b", "d").unwrap());
        let k4 = twice.with_edge("b", "d").unwrap();
        assert!(!has_terminal_face(&k4, "a", "c", "b", "d").unwrap());
    }

    #[test]
    fn disjoint_paths() {
        let two =
            MultiGraph::from_edges(&[("a", "x"), ("x", "b"), ("c", "y"), ("y", "d")]).unwrap();
        let (ab, cd) = disjoint_terminal_paths(&two, "a", "b", "c", "d")
            .unwrap()
            .unwrap();
        assert_eq!(ab.len(), 3);
        assert_eq!(cd.len(), 3);
        let star =
            MultiGraph::from_edges(&[("x", "a"), ("x", "b"), ("x", "c"), ("x", "d")]).unwrap();
        assert!(disjoint_terminal_paths(&star, "a", "b", "c", "d")
            .unwrap()
            .is_none());
    }

    #[test]
    fn dot_has_ports() {
        let tri = complete(&["a", "b", "c"]);
        let dot = planar_embedding(&tri).unwrap().unwrap().to_dot();
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert!(dot.contains("n0:p"));
    }
}

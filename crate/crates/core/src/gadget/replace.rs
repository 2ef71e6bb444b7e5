use super::GadgetCandidate;
use crate::error::{input, Error, Result};
use crate::graph::MultiGraph;
use crate::sparsity::{best_effort, SparsityParams};

/// Replaces one copy of edge uv by `omega`, gluing `omega_uv` onto (u, v).
/// `omega` must be (k, 2k-1)-tight; then g is (k,l)-tight exactly when the
/// result is.
pub fn replace_edge(
    g: &MultiGraph,
    uv: (&str, &str),
    omega: &MultiGraph,
    omega_uv: (&str, &str),
    p: SparsityParams,
) -> Result<MultiGraph> {
    if omega.vertex_count() < 2 {
        return Err(input("replacement graph needs at least two vertices"));
    }
    if omega_uv.0 == omega_uv.1 {
        return Err(input("replacement endpoints must differ"));
    }
    let strict = SparsityParams::new(p.k() as i64, 2 * p.k() as i64 - 1)?;
    let verdict = best_effort(omega, strict);
    if !verdict.tight {
        return Err(Error::NotTight {
            witness: verdict.witness,
        });
    }
    let reduced = g.without_edge(uv.0, uv.1)?;
    reduced.union_identify(omega, &[(omega_uv.0, uv.0), (omega_uv.1, uv.1)])
}

/// G' = G - {ab, cd} + Γ, with Γ's terminals glued onto a, b, c, d.
pub fn apply_gadget(
    g: &MultiGraph,
    ab: (&str, &str),
    cd: (&str, &str),
    gamma: &GadgetCandidate,
) -> Result<MultiGraph> {
    let ends = [ab.0, ab.1, cd.0, cd.1];
    for i in 0..4 {
        for j in i + 1..4 {
            if ends[i] == ends[j] {
                return Err(input(format!(
                    "crossing edges {}-{} and {}-{} must have four distinct endpoints",
                    ab.0, ab.1, cd.0, cd.1
                )));
            }
        }
    }
    let reduced = g.without_edge(ab.0, ab.1)?.without_edge(cd.0, cd.1)?;
    let t = gamma.terminal_strs();
    reduced.union_identify(
        gamma.graph(),
        &[(t[0], ab.0), (t[1], ab.1), (t[2], cd.0), (t[3], cd.1)],
    )
}

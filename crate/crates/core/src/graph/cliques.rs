use super::{Clique, Graph, VertexSet};

/// All inclusion-maximal cliques of `g`, each sorted, listed in
/// lexicographic order. Empty for the empty graph.
pub fn maximal_cliques(g: &Graph) -> Vec<Clique> {
    maximal_cliques_in(g, &g.vertices())
}

/// Maximal cliques of the induced subgraph `g[allowed]`, in `g`'s vertex
/// ids.
///
/// Bron–Kerbosch with Tomita pivoting on bitsets.
pub fn maximal_cliques_in(g: &Graph, allowed: &VertexSet) -> Vec<Clique> {
    let mut out = Vec::new();
    if allowed.is_empty() {
        return out;
    }
    let mut current = Vec::new();
    expand(g, &mut current, allowed.clone(), VertexSet::new(g.n()), &mut out);
    out.sort();
    out
}

fn expand(g: &Graph, current: &mut Vec<usize>, mut cand: VertexSet, mut excluded: VertexSet, out: &mut Vec<Clique>) {
    if cand.is_empty() {
        if excluded.is_empty() {
            out.push(Clique::new_unchecked(current.iter().copied().collect()));
        }
        return;
    }
    let pivot = cand
        .iter()
        .chain(excluded.iter())
        .max_by_key(|&u| (cand.intersection_len(g.neighborhood(u)), std::cmp::Reverse(u)))
        .expect("cand is non-empty");
    let branch = cand.difference(g.neighborhood(pivot));
    for v in branch.iter() {
        let nv = g.neighborhood(v);
        current.push(v);
        expand(g, current, cand.intersection(nv), excluded.intersection(nv), out);
        current.pop();
        cand.remove(v);
        excluded.insert(v);
    }
}

/// Size of a maximum clique (0 for the empty graph).
pub fn omega(g: &Graph) -> usize {
    maximal_cliques(g).iter().map(Clique::len).max().unwrap_or(0)
}

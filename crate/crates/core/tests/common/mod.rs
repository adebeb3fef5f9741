//! Brute-force oracles and the shared test corpus. Everything here is
//! deliberately naive: subset enumeration, exhaustive path search, plain
//! backtracking.

#![allow(dead_code)]

use std::collections::BTreeSet;

use squarefree_berge::generators::{self, HyperprismSpec, PrismSpec};
use squarefree_berge::graph::is_square_free;
use squarefree_berge::partition::GoodPartition;
use squarefree_berge::{Graph, VertexSet};

pub fn subset(n: usize, mask: u64) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

pub fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn is_independent(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

/// Every clique (including the empty one) by subset enumeration.
pub fn all_cliques(g: &Graph) -> Vec<u64> {
    assert!(g.n() <= 20, "subset enumeration only");
    (0u64..1 << g.n()).filter(|&m| is_clique(g, &subset(g.n(), m))).collect()
}

/// Inclusion-maximal cliques as sorted vertex lists.
pub fn naive_maximal_cliques(g: &Graph) -> BTreeSet<Vec<usize>> {
    let cliques = all_cliques(g);
    let set: BTreeSet<u64> = cliques.iter().copied().collect();
    cliques
        .iter()
        .filter(|&&m| m != 0 || g.n() == 0)
        .filter(|&&m| (0..g.n()).all(|v| m >> v & 1 == 1 || !set.contains(&(m | 1 << v))))
        .map(|&m| subset(g.n(), m))
        .filter(|c| !c.is_empty())
        .collect()
}

pub fn naive_omega(g: &Graph) -> usize {
    all_cliques(g).iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
}

/// Some induced 4-cycle, scanning all 4-subsets and their orderings.
pub fn naive_has_square(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let vs = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| vs[i] != vs[j]));
                    if distinct
                        && g.has_edge(a, b)
                        && g.has_edge(b, c)
                        && g.has_edge(c, d)
                        && g.has_edge(d, a)
                        && !g.has_edge(a, c)
                        && !g.has_edge(b, d)
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Whether the induced subgraph on `vs` is a single cycle.
fn induces_cycle(g: &Graph, vs: &[usize]) -> bool {
    let deg_two = vs.iter().all(|&u| vs.iter().filter(|&&v| g.has_edge(u, v)).count() == 2);
    if !deg_two {
        return false;
    }
    let mut seen = vec![vs[0]];
    let mut stack = vec![vs[0]];
    while let Some(u) = stack.pop() {
        for &v in vs {
            if g.has_edge(u, v) && !seen.contains(&v) {
                seen.push(v);
                stack.push(v);
            }
        }
    }
    seen.len() == vs.len()
}

/// Berge by testing every odd vertex subset of size at least 5 for
/// inducing a cycle, in the graph and in its complement.
pub fn naive_is_berge(g: &Graph) -> bool {
    assert!(g.n() <= 16, "subset enumeration only");
    let co = g.complement();
    (0u64..1 << g.n()).all(|m| {
        let k = m.count_ones();
        if k < 5 || k % 2 == 0 {
            return true;
        }
        let vs = subset(g.n(), m);
        !induces_cycle(g, &vs) && !induces_cycle(&co, &vs)
    })
}

/// Chromatic number by plain backtracking in vertex order.
pub fn naive_chromatic(g: &Graph) -> usize {
    fn extend(g: &Graph, colors: &mut Vec<usize>, k: usize) -> bool {
        let v = colors.len();
        if v == g.n() {
            return true;
        }
        let used = colors.iter().copied().max().unwrap_or(0);
        for c in 1..=k.min(used + 1) {
            if (0..v).all(|u| !g.has_edge(u, v) || colors[u] != c) {
                colors.push(c);
                if extend(g, colors, k) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (0..=g.n()).find(|&k| extend(g, &mut Vec::new(), k)).expect("n colors always suffice")
}

pub fn naive_triads(g: &Graph) -> Vec<[usize; 3]> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if is_independent(g, &[a, b, c]) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Condition (iii) by enumerating every chordless K1-K3 path with interior
/// in L, in G minus the K1-K3 edges.
pub fn naive_condition_three(g: &Graph, k1: &[usize], k3: &[usize], l: &[usize]) -> bool {
    let adj = |u: usize, v: usize| g.has_edge(u, v) && !(k1.contains(&u) && k3.contains(&v) || k1.contains(&v) && k3.contains(&u));
    let complete_to_k1 = |v: usize| k1.iter().all(|&a| g.has_edge(v, a));

    fn walk(
        path: &mut Vec<usize>,
        l: &[usize],
        k3: &[usize],
        adj: &dyn Fn(usize, usize) -> bool,
        covered: &dyn Fn(usize) -> bool,
    ) -> bool {
        let tail = *path.last().unwrap();
        let chordless_with = |w: usize, path: &[usize]| path[..path.len() - 1].iter().all(|&p| !adj(p, w));
        for &z in k3 {
            if adj(tail, z) && chordless_with(z, path) && path.len() >= 2 && !path[1..].iter().any(|&v| covered(v)) {
                return false;
            }
        }
        for &w in l {
            if !path.contains(&w) && adj(tail, w) && chordless_with(w, path) {
                path.push(w);
                let ok = walk(path, l, k3, adj, covered);
                path.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    k1.iter().all(|&a| walk(&mut vec![a], l, k3, &adj, &complete_to_k1))
}

/// All five conditions from their definitions, on explicit vertex lists.
pub fn naive_is_good(g: &Graph, k1: &[usize], k2: &[usize], k3: &[usize], l: &[usize], r: &[usize]) -> bool {
    if l.is_empty() || r.is_empty() || l.iter().any(|&u| r.iter().any(|&v| g.has_edge(u, v))) {
        return false;
    }
    let a: Vec<usize> = k1.iter().chain(k2).copied().collect();
    let b: Vec<usize> = k2.iter().chain(k3).copied().collect();
    if !is_clique(g, &a) || !is_clique(g, &b) {
        return false;
    }
    if !naive_condition_three(g, k1, k3, l) {
        return false;
    }
    let cross = k1.iter().any(|&u| k3.iter().any(|&v| g.has_edge(u, v)));
    let mixed = l.iter().any(|&v| k1.iter().any(|&u| g.has_edge(u, v)) && k3.iter().any(|&u| g.has_edge(u, v)));
    if cross && mixed {
        return false;
    }
    naive_triads(g).iter().any(|t| t.iter().any(|v| l.contains(v)) && t.iter().any(|v| r.contains(v)))
}

/// Connected components of `g[vs]` by plain search.
fn naive_components(g: &Graph, vs: &[usize]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = vs.to_vec();
    let mut out = Vec::new();
    while let Some(s) = left.pop() {
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            let (near, far): (Vec<usize>, Vec<usize>) = left.iter().partition(|&&v| g.has_edge(u, v));
            comp.extend(near);
            left = far;
            i += 1;
        }
        out.push(comp);
    }
    out
}

/// A good partition found by exhaustive search: every pair of cliques
/// `(K1 ∪ K2, K2 ∪ K3)` and every split of the remaining components into
/// `L` and `R`.
pub fn brute_force_good_partition(g: &Graph) -> Option<GoodPartition> {
    let n = g.n();
    let cliques = all_cliques(g);
    for &a in &cliques {
        for &b in &cliques {
            let (k1m, k2m, k3m) = (a & !b, a & b, b & !a);
            let rest = subset(n, !(a | b) & ((1u64 << n) - 1));
            let comps = naive_components(g, &rest);
            if comps.len() < 2 || comps.len() > 16 {
                continue;
            }
            let (k1, k2, k3) = (subset(n, k1m), subset(n, k2m), subset(n, k3m));
            for split in 1..(1u32 << comps.len()) - 1 {
                let mut l = Vec::new();
                let mut r = Vec::new();
                for (i, c) in comps.iter().enumerate() {
                    if split >> i & 1 == 1 {
                        l.extend(c);
                    } else {
                        r.extend(c);
                    }
                }
                if naive_is_good(g, &k1, &k2, &k3, &l, &r) {
                    let set = |vs: &[usize]| VertexSet::from_slice(n, vs);
                    return Some(GoodPartition { k1: set(&k1), k2: set(&k2), k3: set(&k3), l: set(&l), r: set(&r) });
                }
            }
        }
    }
    None
}

fn canonical_mask(g: &Graph) -> u64 {
    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, k - 1);
                out.push(q);
            }
        }
        out
    }
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    permutations(n)
        .iter()
        .map(|p| {
            let mut mask = 0u64;
            for &(u, v) in &edges {
                let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                let bit = a * (2 * n - a - 1) / 2 + (b - a - 1);
                mask |= 1 << bit;
            }
            mask
        })
        .min()
        .unwrap_or(0)
}

/// One representative of every isomorphism class of graphs on at most `n`
/// vertices satisfying `keep`, which must be closed under taking induced
/// subgraphs. Classes are grown vertex by vertex.
pub fn hereditary_classes(n: usize, keep: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    let mut classes = vec![Graph::empty(0)];
    let mut all = Vec::new();
    for k in 1..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &classes {
            for nb in 0u64..1 << (k - 1) {
                let mut edges: Vec<(usize, usize)> = g.edges().collect();
                edges.extend(subset(k - 1, nb).into_iter().map(|u| (u, k - 1)));
                let h = Graph::from_edges(k, edges).unwrap();
                if keep(&h) && seen.insert(canonical_mask(&h)) {
                    next.push(h);
                }
            }
        }
        all.extend(next.iter().cloned());
        classes = next;
    }
    all
}

/// Isomorphism classes of square-free Berge graphs on 1..=n vertices.
pub fn small_square_free_berge(n: usize) -> Vec<Graph> {
    hereditary_classes(n, |g| is_square_free(g) && naive_is_berge(g))
}

/// The evaluation corpus: random square-free Berge graphs, prisms,
/// hyperprisms and square-free line graphs of subdivided `K4`, n <= 60.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for i in 0..200u64 {
        let n = 6 + (i as usize * 7) % 55;
        let g = generators::gen_square_free_berge(n, i).unwrap().graph;
        out.push((format!("random n={n} seed={i}"), g));
    }
    for lengths in [[2, 2, 2], [2, 2, 4], [2, 4, 6], [4, 4, 4], [2, 2, 8], [6, 6, 6], [3, 3, 3], [3, 3, 5], [3, 5, 7], [5, 5, 5], [3, 3, 9], [9, 9, 9]] {
        let g = generators::gen_prism(&PrismSpec::new(lengths)).unwrap();
        out.push((format!("prism {lengths:?}"), g));
    }
    let hyper: [[Vec<usize>; 3]; 6] = [
        [vec![2, 2], vec![2], vec![2]],
        [vec![2, 4, 6], vec![2], vec![4]],
        [vec![2], vec![2, 2, 2, 2], vec![6]],
        [vec![3, 3], vec![3], vec![3]],
        [vec![3], vec![5], vec![3, 5, 7]],
        [vec![4], vec![2, 2, 2, 2, 2, 2], vec![4]],
    ];
    for strips in hyper {
        let g = generators::gen_hyperprism(&HyperprismSpec::new(strips.clone())).unwrap().graph;
        out.push((format!("hyperprism {strips:?}"), g));
    }
    let mut lk4 = 0;
    'outer: for code in 0..4usize.pow(6) {
        let branches: [usize; 6] = std::array::from_fn(|i| 1 + code / 4usize.pow(i as u32) % 4);
        if let Ok(g) = generators::gen_lk4_subdivision(&branches) {
            if is_square_free(&g) && g.n() <= 60 {
                out.push((format!("lk4 {branches:?}"), g));
                lk4 += 1;
                if lk4 == 20 {
                    break 'outer;
                }
            }
        }
    }
    out
}

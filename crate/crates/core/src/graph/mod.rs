//! Simple undirected graphs and the structural queries the decomposition
//! relies on: squares, triads, maximal cliques, Berge verification and
//! component splitting.

mod berge;
mod cliques;
mod set;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use berge::{find_odd_hole, is_berge, is_berge_capped, BergeVerdict, DEFAULT_BERGE_CAP};
pub use cliques::{maximal_cliques, maximal_cliques_in, omega};
pub use set::VertexSet;

/// An immutable simple undirected graph on the vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: (0..n).map(|_| VertexSet::new(n)).collect() }
    }

    /// Builds a graph from an edge list. Duplicate edges and both
    /// orientations of an edge are merged; loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    /// The cycle `0-1-...-(n-1)-0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    /// The path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Open neighborhood of `v`.
    #[inline]
    pub fn neighborhood(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|v| {
                let mut s = VertexSet::full(n).difference(&self.adj[v]);
                s.remove(v);
                s
            })
            .collect();
        Graph { adj }
    }

    /// The subgraph induced by `s`, relabeled to `0..|s|` in ascending order
    /// of the original ids. The returned vector maps new ids to old ones.
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map = s.to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let k = map.len();
        let adj = map
            .iter()
            .map(|&v| {
                let mut nb = VertexSet::new(k);
                nb.extend(self.adj[v].iter().filter(|&w| s.contains(w)).map(|w| index[w]));
                nb
            })
            .collect();
        (Graph { adj }, map)
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            let mut rest = s.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    /// Whether `v` is adjacent to every vertex of `s` other than itself.
    pub fn is_complete_to(&self, v: usize, s: &VertexSet) -> bool {
        s.iter().all(|w| w == v || self.has_edge(v, w))
    }

    /// Whether no edge joins `a` and `b`.
    pub fn is_anticomplete(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|v| self.adj[v].is_disjoint(b))
    }

    /// Vertices of `within` adjacent to at least one vertex of `s`.
    pub fn neighbors_of_set(&self, s: &VertexSet, within: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n());
        for v in s.iter() {
            out.union_with(&self.adj[v]);
        }
        out.intersect_with(within);
        out
    }

    /// The vertices reachable from `start` inside `allowed` (`start` is
    /// included even if it is not in `allowed`).
    pub fn reach(&self, start: usize, allowed: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::new(self.n());
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.adj[v].iter() {
                if allowed.contains(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// A shortest path (as a vertex list) from any vertex of `from` to any
    /// vertex of `to`, moving only through `allowed`. Both endpoint sets are
    /// intersected with `allowed`. Ties are broken toward smaller ids.
    pub fn shortest_path(&self, from: &VertexSet, to: &VertexSet, allowed: &VertexSet) -> Option<Vec<usize>> {
        let n = self.n();
        let mut parent = vec![usize::MAX; n];
        let mut seen = VertexSet::new(n);
        let mut queue = VecDeque::new();
        for s in from.iter().filter(|&s| allowed.contains(s)) {
            seen.insert(s);
            parent[s] = s;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            if to.contains(v) {
                let mut path = vec![v];
                let mut cur = v;
                while parent[cur] != cur {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for w in self.adj[v].iter() {
                if allowed.contains(w) && seen.insert(w) {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// A set of pairwise adjacent vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Clique(VertexSet);

impl Clique {
    /// Wraps `s`, checking that it is a clique of `g`.
    pub fn new(g: &Graph, s: VertexSet) -> Result<Self> {
        if g.is_clique(&s) {
            Ok(Clique(s))
        } else {
            Err(Error::HypothesisViolation(format!("{s:?} is not a clique")))
        }
    }

    pub(crate) fn new_unchecked(s: VertexSet) -> Self {
        Clique(s)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.0
    }

    pub fn into_vertices(self) -> VertexSet {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }
}

/// The lexicographically first square `(a, b, c, d)`: edges `ab, bc, cd, da`,
/// non-edges `ac, bd`.
pub fn contains_square(g: &Graph) -> Option<[usize; 4]> {
    let n = g.n();
    for a in 0..n {
        let na = g.neighborhood(a);
        for b in na.iter() {
            let nb = g.neighborhood(b);
            for c in nb.iter() {
                if c == a || na.contains(c) {
                    continue;
                }
                let mut ds = na.intersection(g.neighborhood(c));
                ds.difference_with(nb);
                ds.remove(b);
                if let Some(d) = ds.first() {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

pub fn is_square_free(g: &Graph) -> bool {
    contains_square(g).is_none()
}

/// All triads (independent 3-sets) as sorted triples in lexicographic order.
pub fn find_triads(g: &Graph) -> Vec<[usize; 3]> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if g.has_edge(a, b) {
                continue;
            }
            for c in (b + 1)..n {
                if !g.has_edge(a, c) && !g.has_edge(b, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Whether `x` and `y` lie in a common triad; returns the smallest third
/// vertex.
pub fn triad_completion(g: &Graph, x: usize, y: usize) -> Option<usize> {
    if x == y || g.has_edge(x, y) {
        return None;
    }
    (0..g.n()).find(|&z| z != x && z != y && !g.has_edge(x, z) && !g.has_edge(y, z))
}

/// Connected components of `g[s]`, ordered by smallest member.
pub fn components(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    let mut left = s.clone();
    let mut out = Vec::new();
    while let Some(v) = left.first() {
        let comp = g.reach(v, s);
        left.difference_with(&comp);
        out.push(comp);
    }
    out
}

/// Given a clique `k` and disjoint sets `xs` that are pairwise complete, with
/// every vertex of `k` complete to all but one of them, returns the smallest
/// index `i` such that `(k ∪ X) \ xs[i]` is a clique. In a square-free graph
/// such an index always exists.
pub fn dropped_set_index(g: &Graph, k: &Clique, xs: &[VertexSet]) -> Result<usize> {
    let mut union = k.vertices().clone();
    for (i, x) in xs.iter().enumerate() {
        if !x.is_disjoint(&union) {
            return Err(Error::HypothesisViolation(format!("set {i} overlaps the clique or another set")));
        }
        union.union_with(x);
    }
    (0..xs.len())
        .find(|&i| g.is_clique(&union.difference(&xs[i])))
        .ok_or_else(|| Error::HypothesisViolation("no set can be dropped to leave a clique".into()))
}

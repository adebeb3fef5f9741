//! Merging colorings of `G \ R` and `G \ L` across a good partition.
//!
//! After permuting the colors of the second coloring to agree with the
//! first on the clique `K1 ∪ K2`, the two colorings may still disagree on
//! `K3` (the *bad* vertices). Each round exchanges two colors on one
//! bichromatic component that avoids `K1 ∪ K2`, so the agreement on
//! `K1 ∪ K2` survives, and the number of bad vertices drops. When no bad
//! vertex is left the colorings are glued together.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::partition::GoodPartition;

/// Colors `1..=k` on a subset of the vertices of a graph on `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartialColoring {
    colors: Vec<Option<usize>>,
}

impl PartialColoring {
    pub fn new(n: usize) -> Self {
        PartialColoring { colors: vec![None; n] }
    }

    pub fn from_colors(colors: Vec<Option<usize>>) -> Self {
        PartialColoring { colors }
    }

    /// Number of vertices of the underlying graph.
    pub fn n(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn get(&self, v: usize) -> Option<usize> {
        self.colors.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: usize, color: usize) {
        debug_assert!(color >= 1, "colors start at 1");
        self.colors[v] = Some(color);
    }

    pub fn unset(&mut self, v: usize) {
        self.colors[v] = None;
    }

    pub fn domain(&self) -> VertexSet {
        let mut s = VertexSet::new(self.n());
        s.extend(self.iter().map(|(v, _)| v));
        s
    }

    /// `(vertex, color)` pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.colors.iter().enumerate().filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    pub fn max_color(&self) -> usize {
        self.iter().map(|(_, c)| c).max().unwrap_or(0)
    }

    /// Number of distinct colors in use.
    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<usize> = self.iter().map(|(_, c)| c).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// The first edge of `g` whose ends are colored alike.
    pub fn conflict(&self, g: &Graph) -> Option<(usize, usize)> {
        g.edges().find(|&(u, v)| matches!((self.get(u), self.get(v)), (Some(a), Some(b)) if a == b))
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.conflict(g).is_none()
    }

    /// Re-indexes the colored vertices through `map` into a coloring of a
    /// graph on `n` vertices.
    pub fn map_into(&self, n: usize, map: &[usize]) -> PartialColoring {
        let mut out = PartialColoring::new(n);
        for (v, c) in self.iter() {
            out.set(map[v], c);
        }
        out
    }

    /// Renames every color `c` to `perm[c]` (index 0 unused).
    pub fn permute(&mut self, perm: &[usize]) {
        for c in self.colors.iter_mut().flatten() {
            *c = perm[*c];
        }
    }

    /// Exchanges colors `a` and `b` on `component`, whose vertices must all
    /// be colored.
    pub fn exchange(&mut self, component: &VertexSet, (a, b): (usize, usize)) {
        for v in component.iter() {
            let c = self.colors[v].as_mut().expect("component vertices are colored");
            *c = if *c == a { b } else { a };
        }
    }
}

/// Relabels `c2` by a global color permutation so that it agrees with `c1`
/// on `anchor`. Colors not forced by the anchor go, in ascending order, to
/// the smallest target not yet taken.
pub fn align_colorings(c1: &PartialColoring, c2: &PartialColoring, anchor: &VertexSet) -> Result<PartialColoring> {
    let k = c1.max_color().max(c2.max_color());
    let mut forward = vec![0usize; k + 1];
    let mut taken = vec![false; k + 1];
    for v in anchor.iter() {
        let (Some(a), Some(b)) = (c1.get(v), c2.get(v)) else {
            return Err(Error::HypothesisViolation(format!("anchor vertex {v} is not colored by both colorings")));
        };
        if forward[b] == 0 && !taken[a] {
            forward[b] = a;
            taken[a] = true;
        } else if forward[b] != a {
            return Err(Error::HypothesisViolation(format!("anchor is not a clique of both colorings (vertex {v})")));
        }
    }
    let mut next_free = 1;
    for target in forward.iter_mut().skip(1).filter(|t| **t == 0) {
        while taken[next_free] {
            next_free += 1;
        }
        *target = next_free;
        taken[next_free] = true;
    }
    let mut out = c2.clone();
    out.permute(&forward);
    Ok(out)
}

/// The component containing `u` of the subgraph induced by the vertices
/// colored `pair.0` or `pair.1`.
pub fn bichromatic_component(g: &Graph, c: &PartialColoring, u: usize, pair: (usize, usize)) -> VertexSet {
    let in_pair = |v: usize| matches!(c.get(v), Some(x) if x == pair.0 || x == pair.1);
    let mut comp = VertexSet::new(g.n());
    if !in_pair(u) {
        return comp;
    }
    comp.insert(u);
    let mut queue = VecDeque::from([u]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighborhood(v).iter() {
            if in_pair(w) && comp.insert(w) {
                queue.push_back(w);
            }
        }
    }
    comp
}

/// Which child coloring a swap acts on: `One` colors `G \ R`, `Two`
/// colors `G \ L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Child {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SwapClass {
    /// Seeded at a bad vertex, exchanging its two colors.
    Free,
    /// Any `K3`-seeded exchange that avoids `K1 ∪ K2`.
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapCandidate {
    pub side: Child,
    pub seed: usize,
    /// Ascending color pair.
    pub pair: (usize, usize),
    pub class: SwapClass,
    pub component: VertexSet,
}

/// One applied swap, for tracing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapRecord {
    pub side: Child,
    pub seed: usize,
    pub pair: (usize, usize),
    pub class: SwapClass,
    pub bad_before: usize,
    pub bad_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeOutcome {
    pub coloring: PartialColoring,
    pub swaps: Vec<SwapRecord>,
}

/// `K3` vertices on which the two colorings disagree.
pub fn bad_vertices(p: &GoodPartition, c1: &PartialColoring, c2: &PartialColoring) -> VertexSet {
    p.k3.iter().filter(|&u| c1.get(u) != c2.get(u)).collect()
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Searches for one bichromatic exchange, avoiding `K1 ∪ K2`, after which
/// strictly fewer `K3` vertices are bad.
///
/// Candidates are tried in a fixed order: free swaps (seeded at bad vertices
/// in ascending order, child one before child two), then every swap by
/// `(child, seed ∈ K3, color pair)` over the palette `1..=k`.
pub fn find_reducing_swap(
    g: &Graph,
    p: &GoodPartition,
    c1: &PartialColoring,
    c2: &PartialColoring,
    bad: &VertexSet,
    k: usize,
) -> Option<SwapCandidate> {
    let protected = p.k1.union(&p.k2);
    let colorings = [(Child::One, c1), (Child::Two, c2)];
    let reduces = |side: Child, comp: &VertexSet, pair: (usize, usize)| {
        let (mut a, mut b) = (c1.clone(), c2.clone());
        match side {
            Child::One => a.exchange(comp, pair),
            Child::Two => b.exchange(comp, pair),
        }
        bad_vertices(p, &a, &b).len() < bad.len()
    };

    for u in bad.iter() {
        let (Some(i), Some(j)) = (c1.get(u), c2.get(u)) else { continue };
        let pair = ordered(i, j);
        for (side, c) in colorings {
            let comp = bichromatic_component(g, c, u, pair);
            if comp.is_disjoint(&protected) && reduces(side, &comp, pair) {
                return Some(SwapCandidate { side, seed: u, pair, class: SwapClass::Free, component: comp });
            }
        }
    }

    for (side, c) in colorings {
        for seed in p.k3.iter() {
            let Some(own) = c.get(seed) else { continue };
            for other in (1..=k).filter(|&o| o != own) {
                let pair = ordered(own, other);
                let comp = bichromatic_component(g, c, seed, pair);
                if comp.is_disjoint(&protected) && reduces(side, &comp, pair) {
                    return Some(SwapCandidate { side, seed, pair, class: SwapClass::General, component: comp });
                }
            }
        }
    }
    None
}

/// Combines a coloring `c1` of `G \ R` and a coloring `c2` of `G \ L`, both
/// with colors in `1..=k`, into a coloring of `G` with colors in `1..=k`.
///
/// Fails with `BergeViolation` if bad vertices remain and no exchange
/// reduces them, which cannot happen for a good partition of a square-free
/// Berge graph.
pub fn merge_colorings(
    g: &Graph,
    p: &GoodPartition,
    c1: &PartialColoring,
    c2: &PartialColoring,
    k: usize,
) -> Result<MergeOutcome> {
    let side1 = g.vertices().difference(&p.r);
    let side2 = g.vertices().difference(&p.l);
    if c1.domain() != side1 || c2.domain() != side2 {
        return Err(Error::HypothesisViolation("child colorings must cover exactly G\\R and G\\L".into()));
    }
    for (name, c) in [("first", c1), ("second", c2)] {
        if let Some((u, v)) = c.conflict(g) {
            return Err(Error::HypothesisViolation(format!("{name} child coloring is improper on edge {u}-{v}")));
        }
        if c.max_color() > k {
            return Err(Error::HypothesisViolation(format!("{name} child coloring uses more than {k} colors")));
        }
    }

    let protected = p.k1.union(&p.k2);
    let c1_fixed = c1.clone();
    let mut c1 = c1.clone();
    let mut c2 = align_colorings(&c1, c2, &protected)?;
    if c2.max_color() > k {
        return Err(Error::InternalViolation("alignment left the palette".into()));
    }
    let mut swaps = Vec::new();
    let limit = p.k3.len() * k.max(1);

    loop {
        let bad = bad_vertices(p, &c1, &c2);
        if bad.is_empty() {
            break;
        }
        if swaps.len() >= limit {
            return Err(Error::InternalViolation(format!("more than {limit} swaps while merging")));
        }
        let Some(cand) = find_reducing_swap(g, p, &c1, &c2, &bad, k) else {
            return Err(Error::BergeViolation(format!(
                "no reducing exchange for bad vertices {:?}",
                bad.to_vec()
            )));
        };
        match cand.side {
            Child::One => c1.exchange(&cand.component, cand.pair),
            Child::Two => c2.exchange(&cand.component, cand.pair),
        }
        let after = bad_vertices(p, &c1, &c2).len();
        let intact = protected.iter().all(|v| c1.get(v) == c1_fixed.get(v) && c2.get(v) == c1.get(v));
        if after >= bad.len() || !intact || !c1.is_proper(g) || !c2.is_proper(g) {
            return Err(Error::InternalViolation(format!("swap {cand:?} broke a merge invariant")));
        }
        swaps.push(SwapRecord {
            side: cand.side,
            seed: cand.seed,
            pair: cand.pair,
            class: cand.class,
            bad_before: bad.len(),
            bad_after: after,
        });
    }

    let mut merged = c1;
    for (v, c) in c2.iter() {
        if !side1.contains(v) {
            merged.set(v, c);
        }
    }
    if let Some((u, v)) = merged.conflict(g) {
        return Err(Error::InternalViolation(format!("merged coloring conflicts on {u}-{v}")));
    }
    Ok(MergeOutcome { coloring: merged, swaps })
}

//! Brute-force Berge verification: exhaustive search for odd holes in the
//! graph and in its complement.
//!
//! The search grows chordless paths from the smallest vertex of the
//! prospective hole and prunes a branch as soon as no chordless completion
//! can exist (reachability), or every completion has the wrong parity (when
//! the reachable region is bipartite). Worst-case exponential, so it is
//! guarded by a vertex-count cap.

use serde::Serialize;

use super::{Graph, VertexSet};
use crate::error::{Error, OddCycleKind, Result};

/// Largest graph [`is_berge`] accepts without an explicit override.
pub const DEFAULT_BERGE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BergeVerdict {
    Berge,
    NotBerge { kind: OddCycleKind, cycle: Vec<usize> },
}

impl BergeVerdict {
    pub fn is_berge(&self) -> bool {
        matches!(self, BergeVerdict::Berge)
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            BergeVerdict::Berge => Ok(()),
            BergeVerdict::NotBerge { kind, cycle } => Err(Error::NotBerge { kind, cycle }),
        }
    }
}

/// Berge check with the default size cap.
pub fn is_berge(g: &Graph) -> Result<BergeVerdict> {
    is_berge_capped(g, Some(DEFAULT_BERGE_CAP))
}

/// Berge check; `cap = None` lifts the size limit.
pub fn is_berge_capped(g: &Graph, cap: Option<usize>) -> Result<BergeVerdict> {
    if let Some(cap) = cap {
        if g.n() > cap {
            return Err(Error::TooLarge { what: "Berge verification", n: g.n(), cap });
        }
    }
    if let Some(cycle) = find_odd_hole(g) {
        return Ok(BergeVerdict::NotBerge { kind: OddCycleKind::OddHole, cycle });
    }
    if let Some(cycle) = find_odd_hole(&g.complement()) {
        return Ok(BergeVerdict::NotBerge { kind: OddCycleKind::OddAntihole, cycle });
    }
    Ok(BergeVerdict::Berge)
}

/// Some chordless odd cycle of length at least 5, in cycle order starting
/// from its smallest vertex.
pub fn find_odd_hole(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    for v0 in 0..n {
        let mut low = VertexSet::new(n);
        low.extend(0..=v0);
        let first = g.neighborhood(v0).difference(&low);
        for v1 in first.iter() {
            let mut above_v1 = VertexSet::new(n);
            above_v1.extend(v1 + 1..n);
            let mut search = HoleSearch {
                g,
                start: first.clone(),
                closers: first.intersection(&above_v1).difference(g.neighborhood(v1)),
                path: vec![v0, v1],
            };
            let mut closed = low.clone();
            closed.insert(v1);
            if let Some(hole) = search.dfs(&closed) {
                return Some(hole);
            }
        }
    }
    None
}

struct HoleSearch<'a> {
    g: &'a Graph,
    /// Neighbors of the anchor above it; interior vertices must avoid them.
    start: VertexSet,
    /// Anchor neighbors that may close the hole.
    closers: VertexSet,
    path: Vec<usize>,
}

impl HoleSearch<'_> {
    /// `closed` holds every vertex that can no longer be added: the anchor
    /// and below, the path, and neighbors of all path vertices except the
    /// anchor and the tail.
    fn dfs(&mut self, closed: &VertexSet) -> Option<Vec<usize>> {
        let tail = *self.path.last().expect("path is never empty");
        let tail_nb = self.g.neighborhood(tail);
        let len_with_closer = self.path.len() + 1;
        if self.path.len() >= 3 && len_with_closer % 2 == 1 && len_with_closer >= 5 {
            let mut ends = tail_nb.intersection(&self.closers);
            ends.difference_with(closed);
            if let Some(z) = ends.first() {
                let mut hole = self.path.clone();
                hole.push(z);
                return Some(hole);
            }
        }
        if !self.odd_completion_possible(closed) {
            return None;
        }
        let mut next = tail_nb.difference(closed);
        next.difference_with(&self.start);
        let child_closed = closed.union(tail_nb);
        for w in next.iter() {
            self.path.push(w);
            let found = self.dfs(&child_closed);
            self.path.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Relaxed feasibility test: BFS from the tail through usable interior
    /// vertices, looking for a closer at a distance that makes the cycle odd.
    fn odd_completion_possible(&self, closed: &VertexSet) -> bool {
        let g = self.g;
        let tail = *self.path.last().expect("path is never empty");
        let interior = g.vertices().difference(closed).difference(&self.start);
        let targets = self.closers.difference(closed);
        if targets.is_empty() {
            return false;
        }
        let mut visited = VertexSet::singleton(g.n(), tail);
        let mut layer = visited.clone();
        let mut depth = 0usize;
        let mut bipartite = true;
        let mut odd_hit = false;
        let mut any_hit = false;
        while !layer.is_empty() {
            let mut reach = VertexSet::new(g.n());
            for u in layer.iter() {
                let nb = g.neighborhood(u);
                if bipartite && depth > 0 && nb.intersects(&layer) {
                    bipartite = false;
                }
                reach.union_with(nb);
            }
            if reach.intersects(&targets) {
                any_hit = true;
                // cycle length: path vertices + depth interior vertices + closer
                if (self.path.len() + depth + 1) % 2 == 1 {
                    odd_hit = true;
                }
            }
            if any_hit && (odd_hit || !bipartite) {
                return true;
            }
            reach.intersect_with(&interior);
            reach.difference_with(&visited);
            visited.union_with(&reach);
            layer = reach;
            depth += 1;
        }
        any_hit && (odd_hit || !bipartite)
    }
}

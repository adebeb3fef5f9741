//! Good partitions: verification, and the frame enumeration / refinement
//! search that finds one directly.
//!
//! A good partition `(K1, K2, K3, L, R)` of `V(G)` satisfies
//!
//! 1. `L` and `R` are non-empty and anticomplete;
//! 2. `K1 ∪ K2` and `K2 ∪ K3` are cliques;
//! 3. after deleting the `K1`–`K3` edges, every chordless path from `K1` to
//!    `K3` with interior in `L` has an interior vertex complete to `K1`;
//! 4. `K1` is anticomplete to `K3`, or no vertex of `L` has neighbors in
//!    both;
//! 5. some triad meets both `L` and `R`.
//!
//! A frame `(Q1, Q3, x, y, C1, C3)` fixes two maximal cliques of
//! `G \ {x, y}` and at most one "top" vertex of each private part. The
//! refinement starts from `K'1 = Q1 \ Q3`, `K'2 = Q1 ∩ Q3`,
//! `K'3 = Q3 \ Q1` and only ever shrinks `K'1` and `K'3`, repairing
//! condition 3 and then condition 4 until both hold or `x` and `y` stop
//! being separated.

use std::rc::Rc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{maximal_cliques_in, Clique, Graph, VertexSet};

/// A five-way partition of the vertex set. Values produced by the search
/// are verified good; values read from JSON are candidates until checked
/// with [`verify_good_partition`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPartition {
    #[serde(rename = "K1")]
    pub k1: VertexSet,
    #[serde(rename = "K2")]
    pub k2: VertexSet,
    #[serde(rename = "K3")]
    pub k3: VertexSet,
    #[serde(rename = "L")]
    pub l: VertexSet,
    #[serde(rename = "R")]
    pub r: VertexSet,
}

impl GoodPartition {
    /// `K1 ∪ K2 ∪ K3`.
    pub fn cutset(&self) -> VertexSet {
        self.k1.union(&self.k2).union(&self.k3)
    }

    /// Applies a vertex relabeling to all five sets.
    pub fn map(&self, capacity: usize, map: &[usize]) -> GoodPartition {
        GoodPartition {
            k1: self.k1.map(capacity, map),
            k2: self.k2.map(capacity, map),
            k3: self.k3.map(capacity, map),
            l: self.l.map(capacity, map),
            r: self.r.map(capacity, map),
        }
    }

    fn parts(&self) -> [(&'static str, &VertexSet); 5] {
        [("K1", &self.k1), ("K2", &self.k2), ("K3", &self.k3), ("L", &self.l), ("R", &self.r)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    L,
    R,
}

/// The first failed condition of a candidate partition, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    /// Condition (i): a side is empty.
    EmptySide { side: Side },
    /// Condition (i): an edge between `L` and `R`.
    CrossEdge { l: usize, r: usize },
    /// Condition (ii): two non-adjacent vertices in `K1 ∪ K2` or `K2 ∪ K3`.
    NotClique { union: &'static str, u: usize, v: usize },
    /// Condition (iii): a chordless `K3`–`L`–`K1` path (ends included) with
    /// no interior vertex complete to `K1`.
    UncoveredPath { path: Vec<usize> },
    /// Condition (iv): `K1`–`K3` edges exist and this `L` vertex sees both.
    MixedNeighbor { vertex: usize },
    /// Condition (v): no triad meets both `L` and `R`.
    NoCrossTriad,
}

impl Violation {
    /// Condition number, 1 through 5.
    pub fn condition(&self) -> u8 {
        match self {
            Violation::EmptySide { .. } | Violation::CrossEdge { .. } => 1,
            Violation::NotClique { .. } => 2,
            Violation::UncoveredPath { .. } => 3,
            Violation::MixedNeighbor { .. } => 4,
            Violation::NoCrossTriad => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// All five conditions hold; `triad` is the lexicographically first
    /// triad `(x, y, z)` with `x ∈ L`, `y ∈ R`.
    Good { triad: [usize; 3] },
    Violated(Violation),
}

impl Verdict {
    pub fn is_good(&self) -> bool {
        matches!(self, Verdict::Good { .. })
    }
}

/// Checks the five conditions in order and reports the first failure.
///
/// Errors with `MalformedPartition` if the sets overlap, leave a vertex
/// out, or name a vertex outside the graph.
pub fn verify_good_partition(g: &Graph, p: &GoodPartition) -> Result<Verdict> {
    let n = g.n();
    let mut seen = VertexSet::new(n);
    for (name, part) in p.parts() {
        if let Some(v) = part.iter().find(|&v| v >= n) {
            return Err(Error::MalformedPartition(format!("{name} contains vertex {v} outside the graph")));
        }
        if let Some(v) = part.intersection(&seen).first() {
            return Err(Error::MalformedPartition(format!("vertex {v} appears in more than one set")));
        }
        seen.union_with(part);
    }
    if let Some(v) = g.vertices().difference(&seen).first() {
        return Err(Error::MalformedPartition(format!("vertex {v} is in no set")));
    }

    // (i)
    if p.l.is_empty() {
        return Ok(Verdict::Violated(Violation::EmptySide { side: Side::L }));
    }
    if p.r.is_empty() {
        return Ok(Verdict::Violated(Violation::EmptySide { side: Side::R }));
    }
    for l in p.l.iter() {
        if let Some(r) = g.neighborhood(l).intersection(&p.r).first() {
            return Ok(Verdict::Violated(Violation::CrossEdge { l, r }));
        }
    }
    // (ii)
    for (union, set) in [("K1∪K2", p.k1.union(&p.k2)), ("K2∪K3", p.k2.union(&p.k3))] {
        if let Some((u, v)) = non_edge_in(g, &set) {
            return Ok(Verdict::Violated(Violation::NotClique { union, u, v }));
        }
    }
    // (iii)
    if let Some(path) = uncovered_path(g, &p.k1, &p.k3, &p.l) {
        return Ok(Verdict::Violated(Violation::UncoveredPath { path }));
    }
    // (iv)
    if let Some(vertex) = mixed_neighbor(g, &p.k1, &p.k3, &p.l) {
        return Ok(Verdict::Violated(Violation::MixedNeighbor { vertex }));
    }
    // (v)
    match cross_triad(g, &p.l, &p.r) {
        Some(triad) => Ok(Verdict::Good { triad }),
        None => Ok(Verdict::Violated(Violation::NoCrossTriad)),
    }
}

fn non_edge_in(g: &Graph, s: &VertexSet) -> Option<(usize, usize)> {
    s.iter().find_map(|u| s.iter().find(|&v| v > u && !g.has_edge(u, v)).map(|v| (u, v)))
}

/// The shortest condition-(iii) violation, as `[u ∈ K3, interior.., v ∈ K1]`.
///
/// Interior vertices complete to `K1` are removed from `L`; a shortest path
/// in what remains from a vertex with a `K3` neighbor ("start") to a vertex
/// with a `K1` neighbor ("bad arrival") is chordless, and its ends attach to
/// `K3` and `K1` only at the path ends. Conversely every violating path lives
/// in the reduced set, so the search is exact.
pub(crate) fn uncovered_path(g: &Graph, k1: &VertexSet, k3: &VertexSet, l: &VertexSet) -> Option<Vec<usize>> {
    if k1.is_empty() || k3.is_empty() {
        return None;
    }
    let reduced: VertexSet = l.iter().filter(|&v| !k1.is_subset(g.neighborhood(v))).collect();
    let start = g.neighbors_of_set(k3, &reduced);
    let arrival = g.neighbors_of_set(k1, &reduced);
    let interior = g.shortest_path(&start, &arrival, &reduced)?;
    let first = interior[0];
    let last = *interior.last().expect("paths are non-empty");
    let u = g.neighborhood(first).intersection(k3).first().expect("start vertex sees K3");
    let v = g.neighborhood(last).intersection(k1).first().expect("arrival vertex sees K1");
    let mut path = Vec::with_capacity(interior.len() + 2);
    path.push(u);
    path.extend(interior);
    path.push(v);
    Some(path)
}

/// A vertex of `L` with neighbors in both `K1` and `K3`, when `K1` is not
/// anticomplete to `K3`.
pub(crate) fn mixed_neighbor(g: &Graph, k1: &VertexSet, k3: &VertexSet, l: &VertexSet) -> Option<usize> {
    if g.is_anticomplete(k1, k3) {
        return None;
    }
    l.iter()
        .find(|&v| g.neighborhood(v).intersects(k1) && g.neighborhood(v).intersects(k3))
}

fn cross_triad(g: &Graph, l: &VertexSet, r: &VertexSet) -> Option<[usize; 3]> {
    for x in l.iter() {
        for y in r.iter() {
            if let Some(z) = crate::graph::triad_completion(g, x, y) {
                return Some([x, y, z]);
            }
        }
    }
    None
}

mod opt_vertex {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub(super) fn serialize<S: Serializer>(v: &Option<usize>, s: S) -> Result<S::Ok, S::Error> {
        v.iter().collect::<Vec<_>>().serialize(s)
    }

    pub(super) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<usize>, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        match v.as_slice() {
            [] => Ok(None),
            [x] => Ok(Some(*x)),
            _ => Err(serde::de::Error::custom("at most one vertex expected")),
        }
    }
}

/// A seed for the refinement search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    #[serde(rename = "Q1")]
    pub q1: Clique,
    #[serde(rename = "Q3")]
    pub q3: Clique,
    pub x: usize,
    pub y: usize,
    #[serde(rename = "C1", with = "opt_vertex")]
    pub c1: Option<usize>,
    #[serde(rename = "C3", with = "opt_vertex")]
    pub c3: Option<usize>,
}

impl Frame {
    /// `Q1 \ Q3`.
    pub fn private1(&self) -> VertexSet {
        self.q1.vertices().difference(self.q3.vertices())
    }

    /// `Q3 \ Q1`.
    pub fn private3(&self) -> VertexSet {
        self.q3.vertices().difference(self.q1.vertices())
    }

    /// `Q1 ∩ Q3`.
    pub fn shared(&self) -> VertexSet {
        self.q1.vertices().intersection(self.q3.vertices())
    }

    /// Checks the frame conditions directly from their definition.
    pub fn check(&self, g: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::HypothesisViolation(msg));
        let (x, y) = (self.x, self.y);
        if x >= g.n() || y >= g.n() || x == y {
            return bad(format!("({x}, {y}) is not a pair of distinct vertices"));
        }
        if crate::graph::triad_completion(g, x, y).is_none() {
            return bad(format!("{x} and {y} share no triad"));
        }
        let mut rest = g.vertices();
        rest.remove(x);
        rest.remove(y);
        for q in [&self.q1, &self.q3] {
            let s = q.vertices();
            if !s.is_subset(&rest) || !g.is_clique(s) {
                return bad(format!("{s:?} is not a clique of G minus x, y"));
            }
            let extendable = rest.difference(s).iter().any(|v| g.is_complete_to(v, s));
            if extendable || s.is_empty() {
                return bad(format!("{s:?} is not maximal"));
            }
        }
        if let Some(c) = self.c1 {
            if !self.private1().contains(c) {
                return bad(format!("C1 = {c} is not in Q1 \\ Q3"));
            }
        }
        if let Some(c) = self.c3 {
            if !self.private3().contains(c) {
                return bad(format!("C3 = {c} is not in Q3 \\ Q1"));
            }
        }
        Ok(())
    }
}

/// Vertices of one private clique part ordered by decreasing neighborhood
/// in the other part; ties go to the smaller id. In a square-free graph the
/// neighborhoods are nested, so earlier vertices dominate later ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodOrder {
    order: Vec<usize>,
}

impl NeighborhoodOrder {
    /// Fails with `NotSquareFree` (and the square) if two neighborhoods are
    /// incomparable.
    pub fn new(g: &Graph, side: &VertexSet, other: &VertexSet) -> Result<Self> {
        let mut order: Vec<(usize, usize)> =
            side.iter().map(|v| (g.neighborhood(v).intersection_len(other), v)).collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let order: Vec<usize> = order.into_iter().map(|(_, v)| v).collect();
        for pair in order.windows(2) {
            let (hi, lo) = (pair[0], pair[1]);
            let n_hi = g.neighborhood(hi).intersection(other);
            let n_lo = g.neighborhood(lo).intersection(other);
            if let Some(w) = n_lo.difference(&n_hi).first() {
                let w2 = n_hi.difference(&n_lo).first().expect("|N(hi)| >= |N(lo)|");
                return Err(Error::NotSquareFree([hi, w2, w, lo]));
            }
        }
        Ok(NeighborhoodOrder { order })
    }

    /// Maximal vertex first.
    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.order.iter().position(|&w| w == v)
    }

    /// Vertices strictly above `c`, maximal first.
    pub fn above(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().copied().take_while(move |&v| v != c)
    }
}

/// Result of the connectivity update.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Connectivity {
    /// `l` is the component of `G \ cut` containing `x`; `r` is everything
    /// else outside the cut; `ry` is the component of `G[r]` containing `y`.
    Separated { l: VertexSet, r: VertexSet, ry: VertexSet },
    /// `x` and `y` lie in the same component.
    Failure,
}

pub fn connectivity_update(
    g: &Graph,
    k1: &VertexSet,
    k2: &VertexSet,
    k3: &VertexSet,
    x: usize,
    y: usize,
) -> Connectivity {
    let cut = k1.union(k2).union(k3);
    debug_assert!(!cut.contains(x) && !cut.contains(y));
    let rest = g.vertices().difference(&cut);
    let l = g.reach(x, &rest);
    if l.contains(y) {
        return Connectivity::Failure;
    }
    let r = rest.difference(&l);
    let ry = g.reach(y, &r);
    Connectivity::Separated { l, r, ry }
}

/// Counters from one refinement run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RefineStats {
    /// Condition-(iii) repairs (shrinks of `K'1`).
    pub path_repairs: usize,
    /// Condition-(iv) repairs (shrinks of `K'3`).
    pub mixed_repairs: usize,
}

/// Runs the refinement on one frame. Returns a verified good partition, or
/// `None` if the connectivity update fails at some point.
pub fn refine_frame(g: &Graph, f: &Frame) -> Result<Option<GoodPartition>> {
    refine_frame_with_stats(g, f).map(|(p, _)| p)
}

pub fn refine_frame_with_stats(g: &Graph, f: &Frame) -> Result<(Option<GoodPartition>, RefineStats)> {
    let private1 = f.private1();
    let private3 = f.private3();
    let order1 = NeighborhoodOrder::new(g, &private1, &private3)?;
    let order3 = NeighborhoodOrder::new(g, &private3, &private1)?;
    let k2 = f.shared();

    // Step 1: keep only the vertices at or below the chosen top vertex.
    let truncate = |private: &VertexSet, order: &NeighborhoodOrder, c: Option<usize>| match c {
        None => VertexSet::new(g.n()),
        Some(c) => {
            let mut k = private.clone();
            for v in order.above(c) {
                k.remove(v);
            }
            k
        }
    };
    let mut k1 = truncate(&private1, &order1, f.c1);
    let mut k3 = truncate(&private3, &order3, f.c3);
    let mut stats = RefineStats::default();

    let Connectivity::Separated { mut l, mut r, .. } = connectivity_update(g, &k1, &k2, &k3, f.x, f.y) else {
        return Ok((None, stats));
    };

    let budget = k1.len() + k3.len();
    let mut size = budget;
    let mut shrunk = |k1: &VertexSet, k3: &VertexSet, stats: &RefineStats| -> Result<()> {
        let now = k1.len() + k3.len();
        if now >= size || stats.path_repairs + stats.mixed_repairs > budget {
            return Err(Error::InternalViolation(format!(
                "refinement did not shrink (|K1'|+|K3'| = {now}, before {size})"
            )));
        }
        size = now;
        Ok(())
    };

    'repair: while !k1.is_empty() && !k3.is_empty() {
        // Step 2: condition (iii).
        while let Some(path) = uncovered_path(g, &k1, &k3, &l) {
            let tail = path[path.len() - 2];
            let nb = g.neighborhood(tail);
            match f.c1 {
                Some(c1) if nb.contains(c1) => k1.intersect_with(nb),
                _ => k1.difference_with(nb),
            }
            stats.path_repairs += 1;
            shrunk(&k1, &k3, &stats)?;
            if let Some(c1) = f.c1 {
                if !k1.contains(c1) {
                    return Err(Error::InternalViolation(format!("C1 vertex {c1} left K1'")));
                }
            }
            match connectivity_update(g, &k1, &k2, &k3, f.x, f.y) {
                Connectivity::Separated { l: l2, r: r2, .. } => (l, r) = (l2, r2),
                Connectivity::Failure => return Ok((None, stats)),
            }
        }
        // Step 3: condition (iv).
        let Some(u) = mixed_neighbor(g, &k1, &k3, &l) else {
            break 'repair;
        };
        k3.difference_with(g.neighborhood(u));
        stats.mixed_repairs += 1;
        shrunk(&k1, &k3, &stats)?;
        match connectivity_update(g, &k1, &k2, &k3, f.x, f.y) {
            Connectivity::Separated { l: l2, r: r2, .. } => (l, r) = (l2, r2),
            Connectivity::Failure => return Ok((None, stats)),
        }
    }

    let p = GoodPartition { k1, k2, k3, l, r };
    match verify_good_partition(g, &p)? {
        Verdict::Good { .. } => Ok((Some(p), stats)),
        Verdict::Violated(v) => Err(Error::InternalViolation(format!("refined partition is not good: {v:?}"))),
    }
}

/// Ordered pairs `(x, y)` of distinct vertices lying in a common triad, in
/// lexicographic order.
pub fn triad_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| crate::graph::triad_completion(g, x, y).is_some())
        .collect()
}

fn cliques_avoiding(g: &Graph, x: usize, y: usize) -> Vec<Clique> {
    let mut rest = g.vertices();
    rest.remove(x);
    rest.remove(y);
    maximal_cliques_in(g, &rest)
}

fn top_choices(private: &VertexSet) -> impl Iterator<Item = Option<usize>> + '_ {
    std::iter::once(None).chain(private.iter().map(Some))
}

fn frames_for(x: usize, y: usize, q1: &Clique, q3: &Clique) -> Vec<Frame> {
    let private1 = q1.vertices().difference(q3.vertices());
    let private3 = q3.vertices().difference(q1.vertices());
    let mut out = Vec::with_capacity((private1.len() + 1) * (private3.len() + 1));
    for c1 in top_choices(&private1) {
        for c3 in top_choices(&private3) {
            out.push(Frame { q1: q1.clone(), q3: q3.clone(), x, y, c1, c3 });
        }
    }
    out
}

/// Every frame of `g`, in canonical order: by `(x, y)`, then by the indices
/// of `Q1` and `Q3` in the sorted clique list of `G \ {x, y}`, then `C1` and
/// `C3` (empty first, then ascending).
pub fn enumerate_frames(g: &Graph) -> impl Iterator<Item = Frame> + '_ {
    triad_pairs(g).into_iter().flat_map(move |(x, y)| {
        let cliques = Rc::new(cliques_avoiding(g, x, y));
        let m = cliques.len();
        (0..m).flat_map(move |i| {
            let cliques = Rc::clone(&cliques);
            (0..m).flat_map(move |j| frames_for(x, y, &cliques[i], &cliques[j]))
        })
    })
}

/// Search configuration.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    /// Process `(x, y)` pairs on the rayon pool. The returned partition is
    /// still the first one in canonical order; the counters then only cover
    /// the winning pair.
    pub parallel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Found {
    pub partition: GoodPartition,
    pub frame: Frame,
    /// A triad `(x, y, z)` with `x ∈ L`, `y ∈ R`: the frame's pair and the
    /// smallest common non-neighbor.
    pub triad: [usize; 3],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub found: Option<Found>,
    /// Frames whose refinement was run.
    pub frames_refined: usize,
    /// Frames skipped because `Q1 ∪ Q3` does not separate `x` from `y`
    /// (refinement only shrinks the cut, so these always fail).
    pub frames_skipped: usize,
}

/// The first good partition produced by refining the frames of `g` in
/// canonical order. The caller is responsible for `g` being square-free.
pub fn find_good_partition(g: &Graph) -> Result<Option<GoodPartition>> {
    Ok(search_good_partition(g, SearchOptions::default())?.found.map(|f| f.partition))
}

pub fn search_good_partition(g: &Graph, opts: SearchOptions) -> Result<SearchOutcome> {
    let pairs = triad_pairs(g);
    if opts.parallel {
        let hit = pairs.par_iter().find_map_first(|&(x, y)| match search_pair(g, x, y) {
            Ok(out) if out.found.is_none() => None,
            other => Some(other),
        });
        let mut outcome = SearchOutcome::default();
        if let Some(res) = hit {
            let res = res?;
            outcome.frames_refined = res.refined;
            outcome.frames_skipped = res.skipped;
            outcome.found = res.found;
        }
        return Ok(outcome);
    }
    let mut outcome = SearchOutcome::default();
    for (x, y) in pairs {
        let res = search_pair(g, x, y)?;
        outcome.frames_refined += res.refined;
        outcome.frames_skipped += res.skipped;
        if res.found.is_some() {
            outcome.found = res.found;
            break;
        }
    }
    Ok(outcome)
}

#[derive(Default)]
struct PairOutcome {
    found: Option<Found>,
    refined: usize,
    skipped: usize,
}

fn search_pair(g: &Graph, x: usize, y: usize) -> Result<PairOutcome> {
    let cliques = cliques_avoiding(g, x, y);
    let mut out = PairOutcome::default();
    for q1 in &cliques {
        for q3 in &cliques {
            let frames = frames_for(x, y, q1, q3);
            let cut = q1.vertices().union(q3.vertices());
            let outside = g.vertices().difference(&cut);
            if g.reach(x, &outside).contains(y) {
                out.skipped += frames.len();
                continue;
            }
            for frame in frames {
                out.refined += 1;
                if let Some(partition) = refine_frame(g, &frame)? {
                    let z = crate::graph::triad_completion(g, x, y).expect("frame pairs lie in a triad");
                    out.found = Some(Found { partition, frame, triad: [x, y, z] });
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

//! Recursive ω-coloring: split along a good partition, color `G \ R` and
//! `G \ L`, merge; color graphs without a good partition exactly.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{contains_square, is_berge_capped, omega, Graph, VertexSet, DEFAULT_BERGE_CAP};
use crate::partition::{search_good_partition, GoodPartition, SearchOptions};
use crate::recolor::{merge_colorings, PartialColoring, SwapRecord};

/// Largest leaf the backtracking oracle accepts.
pub const LEAF_CAP: usize = 256;

/// Search-node budget of the backtracking oracle.
pub const LEAF_BUDGET: u64 = 50_000_000;

/// Receives trace events as they happen.
pub type TraceSink = Arc<dyn Fn(&TraceEvent) + Send + Sync>;

#[derive(Clone)]
pub struct SolverOptions {
    /// Inputs larger than this skip the brute-force Berge check (and are
    /// trusted, with a warning). `None` always checks.
    pub berge_cap: Option<usize>,
    /// Skip the Berge check entirely.
    pub trust_berge: bool,
    /// Color the two children of a node concurrently and search frame pairs
    /// in parallel. Results are identical; stats counters may differ.
    pub parallel: bool,
    pub trace: Option<TraceSink>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { berge_cap: Some(DEFAULT_BERGE_CAP), trust_berge: false, parallel: false, trace: None }
    }
}

impl std::fmt::Debug for SolverOptions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SolverOptions")
            .field("berge_cap", &self.berge_cap)
            .field("trust_berge", &self.trust_berge)
            .field("parallel", &self.parallel)
            .field("trace", &self.trace.is_some())
            .finish()
    }
}

/// Trace events, in root vertex numbering.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Split {
        vertices: VertexSet,
        partition: GoodPartition,
        triad: [usize; 3],
        frames_refined: usize,
        frames_skipped: usize,
    },
    Swap {
        vertices: VertexSet,
        #[serde(flatten)]
        swap: SwapRecord,
    },
    Leaf {
        vertices: VertexSet,
        colors: usize,
    },
}

/// A node of the decomposition tree. All vertex numbers are those of the
/// root graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub vertices: VertexSet,
    pub omega: usize,
    #[serde(flatten)]
    pub kind: NodeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    Leaf,
    Split {
        partition: GoodPartition,
        /// `(x, y, z)` with `x ∈ L` and `y ∈ R`.
        triad: [usize; 3],
        swaps: Vec<SwapRecord>,
        /// Children colored on `G \ R` and `G \ L`, in that order.
        children: Box<[TreeNode; 2]>,
    },
}

impl TreeNode {
    fn walk<'a>(&'a self, depth: usize, f: &mut impl FnMut(&'a TreeNode, usize)) {
        f(self, depth);
        if let NodeKind::Split { children, .. } = &self.kind {
            for c in children.iter() {
                c.walk(depth + 1, f);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DecompositionTree {
    pub root: TreeNode,
}

impl DecompositionTree {
    pub fn node_count(&self) -> usize {
        let mut count = 0;
        self.root.walk(0, &mut |_, _| count += 1);
        count
    }

    pub fn leaf_count(&self) -> usize {
        let mut count = 0;
        self.root.walk(0, &mut |n, _| count += matches!(n.kind, NodeKind::Leaf) as usize);
        count
    }

    /// Edges on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        let mut depth = 0;
        self.root.walk(0, &mut |_, d| depth = depth.max(d));
        depth
    }

    /// Witness triads of the internal nodes, in preorder.
    pub fn triads(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        self.root.walk(0, &mut |n, _| {
            if let NodeKind::Split { triad, .. } = &n.kind {
                out.push(*triad);
            }
        });
        out
    }

    /// Checks the structural invariants: children are `node \ R` and
    /// `node \ L`, triads are distinct, at most `3n³` nodes, depth at most
    /// `n`.
    pub fn check(&self) -> Result<()> {
        let n = self.root.vertices.len();
        let mut problem = None;
        self.root.walk(0, &mut |node, _| {
            if let NodeKind::Split { partition: p, children, .. } = &node.kind {
                let [a, b] = &**children;
                if a.vertices != node.vertices.difference(&p.r) || b.vertices != node.vertices.difference(&p.l) {
                    problem.get_or_insert(format!("children of node {:?} are not G\\R and G\\L", node.vertices));
                }
                if a.vertices.len() >= node.vertices.len() || b.vertices.len() >= node.vertices.len() {
                    problem.get_or_insert(format!("node {:?} has a child that is not smaller", node.vertices));
                }
            }
        });
        if let Some(p) = problem {
            return Err(Error::InternalViolation(p));
        }
        let triads = self.triads();
        let distinct: BTreeSet<[usize; 3]> = triads
            .iter()
            .map(|t| {
                let mut t = *t;
                t.sort_unstable();
                t
            })
            .collect();
        if distinct.len() != triads.len() {
            return Err(Error::InternalViolation("two decomposition nodes share a witness triad".into()));
        }
        let bound = 3 * n.pow(3);
        if self.node_count() > bound.max(1) {
            return Err(Error::InternalViolation(format!("{} nodes exceed 3n^3 = {bound}", self.node_count())));
        }
        if self.depth() > n {
            return Err(Error::InternalViolation(format!("depth {} exceeds n = {n}", self.depth())));
        }
        Ok(())
    }

    /// Graphviz rendering: one node per decomposition step, internal nodes
    /// labeled with the part sizes and the witness triad.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph decomposition {\n  node [shape=box, fontname=\"monospace\"];\n");
        let mut next = 0usize;
        fn emit(node: &TreeNode, id: usize, next: &mut usize, out: &mut String) {
            match &node.kind {
                NodeKind::Leaf => {
                    let _ = writeln!(out, "  n{id} [label=\"leaf n={} omega={}\"];", node.vertices.len(), node.omega);
                }
                NodeKind::Split { partition: p, triad, children, .. } => {
                    let _ = writeln!(
                        out,
                        "  n{id} [label=\"|K1|={} |K2|={} |K3|={} |L|={} |R|={}\\ntriad ({}, {}, {})\"];",
                        p.k1.len(),
                        p.k2.len(),
                        p.k3.len(),
                        p.l.len(),
                        p.r.len(),
                        triad[0],
                        triad[1],
                        triad[2]
                    );
                    for child in children.iter() {
                        *next += 1;
                        let cid = *next;
                        let _ = writeln!(out, "  n{id} -> n{cid};");
                        emit(child, cid, next, out);
                    }
                }
            }
        }
        emit(&self.root, 0, &mut next, &mut out);
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub frames_refined: usize,
    pub frames_skipped: usize,
    pub swaps: usize,
    pub leaves: usize,
    pub splits: usize,
    /// Whether the brute-force Berge check ran on the input.
    pub berge_checked: bool,
}

impl SolveStats {
    fn add(&mut self, other: &SolveStats) {
        self.frames_refined += other.frames_refined;
        self.frames_skipped += other.frames_skipped;
        self.swaps += other.swaps;
        self.leaves += other.leaves;
        self.splits += other.splits;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorResult {
    pub coloring: PartialColoring,
    pub colors_used: usize,
    pub omega: usize,
    pub tree: DecompositionTree,
    pub stats: SolveStats,
    pub warnings: Vec<String>,
}

/// Colors a square-free Berge graph with `ω(g)` colors using the default
/// options.
pub fn color(g: &Graph) -> Result<ColorResult> {
    color_with(g, &SolverOptions::default())
}

pub fn color_with(g: &Graph, opts: &SolverOptions) -> Result<ColorResult> {
    if let Some(square) = contains_square(g) {
        return Err(Error::NotSquareFree(square));
    }
    let mut warnings = Vec::new();
    let mut berge_checked = false;
    if opts.trust_berge {
        warnings.push("Berge check skipped on request".to_string());
    } else if opts.berge_cap.is_some_and(|cap| g.n() > cap) {
        warnings.push(format!(
            "Berge check skipped: n = {} exceeds the cap of {}; input trusted",
            g.n(),
            opts.berge_cap.unwrap_or_default()
        ));
    } else {
        is_berge_capped(g, None)?.into_result()?;
        berge_checked = true;
    }

    let identity: Vec<usize> = (0..g.n()).collect();
    let (coloring, root, mut stats) = solve(g, &identity, g.n(), opts)?;
    stats.berge_checked = berge_checked;
    let tree = DecompositionTree { root };
    tree.check()?;
    let omega = tree.root.omega;
    if let Some((u, v)) = coloring.conflict(g) {
        return Err(Error::InternalViolation(format!("final coloring conflicts on {u}-{v}")));
    }
    let colors_used = coloring.colors_used();
    if colors_used != omega || coloring.domain().len() != g.n() {
        return Err(Error::InternalViolation(format!("used {colors_used} colors, omega is {omega}")));
    }
    Ok(ColorResult { coloring, colors_used, omega, tree, stats, warnings })
}

/// Colors `g`, whose vertex `i` is vertex `map[i]` of a root graph on
/// `root_n` vertices. The coloring is in `g`'s numbering; the tree in the
/// root's.
fn solve(g: &Graph, map: &[usize], root_n: usize, opts: &SolverOptions) -> Result<(PartialColoring, TreeNode, SolveStats)> {
    let k = omega(g);
    let vertices = g.vertices().map(root_n, map);
    let search = search_good_partition(g, SearchOptions { parallel: opts.parallel })?;
    let mut stats =
        SolveStats { frames_refined: search.frames_refined, frames_skipped: search.frames_skipped, ..Default::default() };

    let Some(found) = search.found else {
        let coloring = leaf_color(g, k)?;
        stats.leaves = 1;
        if let Some(sink) = &opts.trace {
            sink(&TraceEvent::Leaf { vertices: vertices.clone(), colors: coloring.colors_used() });
        }
        return Ok((coloring, TreeNode { vertices, omega: k, kind: NodeKind::Leaf }, stats));
    };

    let p = found.partition;
    let root_partition = p.map(root_n, map);
    let root_triad = found.triad.map(|v| map[v]);
    if let Some(sink) = &opts.trace {
        sink(&TraceEvent::Split {
            vertices: vertices.clone(),
            partition: root_partition.clone(),
            triad: root_triad,
            frames_refined: search.frames_refined,
            frames_skipped: search.frames_skipped,
        });
    }
    let (g1, m1) = g.induced(&g.vertices().difference(&p.r));
    let (g2, m2) = g.induced(&g.vertices().difference(&p.l));
    let root1: Vec<usize> = m1.iter().map(|&v| map[v]).collect();
    let root2: Vec<usize> = m2.iter().map(|&v| map[v]).collect();
    let (r1, r2) = if opts.parallel {
        rayon::join(|| solve(&g1, &root1, root_n, opts), || solve(&g2, &root2, root_n, opts))
    } else {
        (solve(&g1, &root1, root_n, opts), solve(&g2, &root2, root_n, opts))
    };
    let (c1, t1, s1) = r1?;
    let (c2, t2, s2) = r2?;
    let merged = merge_colorings(g, &p, &c1.map_into(g.n(), &m1), &c2.map_into(g.n(), &m2), k)?;

    let swaps: Vec<SwapRecord> =
        merged.swaps.into_iter().map(|s| SwapRecord { seed: map[s.seed], ..s }).collect();
    if let Some(sink) = &opts.trace {
        for s in &swaps {
            sink(&TraceEvent::Swap { vertices: vertices.clone(), swap: s.clone() });
        }
    }
    stats.add(&s1);
    stats.add(&s2);
    stats.splits += 1;
    stats.swaps += swaps.len();
    let node = TreeNode {
        vertices,
        omega: k,
        kind: NodeKind::Split { partition: root_partition, triad: root_triad, swaps, children: Box::new([t1, t2]) },
    };
    Ok((merged.coloring, node, stats))
}

/// Exact coloring with at most `target` colors by saturation-ordered
/// backtracking (DSATUR order, ties to higher degree then smaller id).
/// Fails with `Infeasible` when no such coloring exists.
pub fn leaf_color(g: &Graph, target: usize) -> Result<PartialColoring> {
    let n = g.n();
    if n > LEAF_CAP {
        return Err(Error::TooLarge { what: "exact leaf coloring", n, cap: LEAF_CAP });
    }
    let mut search = Dsatur {
        g,
        target,
        colors: vec![0; n],
        // seen[v][c]: neighbors of v currently colored c
        seen: vec![vec![0u32; target + 1]; n],
        budget: LEAF_BUDGET,
    };
    match search.run(0, 0) {
        Some(true) => Ok(PartialColoring::from_colors(search.colors.into_iter().map(Some).collect())),
        Some(false) => Err(Error::Infeasible { target }),
        None => Err(Error::InternalViolation(format!("leaf coloring exceeded {LEAF_BUDGET} search nodes"))),
    }
}

struct Dsatur<'a> {
    g: &'a Graph,
    target: usize,
    colors: Vec<usize>,
    seen: Vec<Vec<u32>>,
    budget: u64,
}

impl Dsatur<'_> {
    fn saturation(&self, v: usize) -> usize {
        self.seen[v][1..].iter().filter(|&&c| c > 0).count()
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.n()).filter(|&v| self.colors[v] == 0).max_by_key(|&v| {
            let free_degree = self.g.neighborhood(v).iter().filter(|&w| self.colors[w] == 0).count();
            (self.saturation(v), free_degree, std::cmp::Reverse(v))
        })
    }

    fn paint(&mut self, v: usize, c: usize, add: bool) {
        self.colors[v] = if add { c } else { 0 };
        for w in self.g.neighborhood(v).iter() {
            if add {
                self.seen[w][c] += 1;
            } else {
                self.seen[w][c] -= 1;
            }
        }
    }

    /// `Some(true)` on success, `Some(false)` if exhausted, `None` if out of
    /// budget.
    fn run(&mut self, colored: usize, used: usize) -> Option<bool> {
        if colored == self.g.n() {
            return Some(true);
        }
        if self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        let v = self.pick().expect("an uncolored vertex remains");
        // colors above used + 1 are symmetric to used + 1
        for c in 1..=self.target.min(used + 1) {
            if self.seen[v][c] > 0 {
                continue;
            }
            self.paint(v, c, true);
            let res = self.run(colored + 1, used.max(c));
            if res != Some(false) {
                return res;
            }
            self.paint(v, c, false);
        }
        Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ColoringVerdict {
    Valid { colors_used: usize, omega: usize },
    Uncolored { vertex: usize },
    Conflict { u: usize, v: usize, color: usize },
    ExceedsOmega { vertex: usize, color: usize, omega: usize },
}

impl ColoringVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ColoringVerdict::Valid { .. })
    }
}

impl std::fmt::Display for ColoringVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColoringVerdict::Valid { colors_used, omega } => write!(f, "valid: {colors_used} colors, omega {omega}"),
            ColoringVerdict::Uncolored { vertex } => write!(f, "vertex {vertex} is uncolored"),
            ColoringVerdict::Conflict { u, v, color } => write!(f, "edge {u}-{v} has both ends colored {color}"),
            ColoringVerdict::ExceedsOmega { vertex, color, omega } => {
                write!(f, "vertex {vertex} has color {color} above omega {omega}")
            }
        }
    }
}

/// Valid iff every vertex is colored, adjacent vertices differ, and no
/// color exceeds `ω(g)`.
pub fn verify_coloring(g: &Graph, c: &PartialColoring) -> ColoringVerdict {
    if let Some(vertex) = (0..g.n()).find(|&v| c.get(v).is_none()) {
        return ColoringVerdict::Uncolored { vertex };
    }
    if let Some((u, v)) = c.conflict(g) {
        return ColoringVerdict::Conflict { u, v, color: c.get(u).expect("total") };
    }
    let omega = omega(g);
    if let Some((vertex, color)) = c.iter().find(|&(_, color)| color > omega) {
        return ColoringVerdict::ExceedsOmega { vertex, color, omega };
    }
    ColoringVerdict::Valid { colors_used: c.colors_used(), omega }
}

//! Test-instance constructions: prisms, parallel-rung hyperprisms, line
//! graphs of bipartite subdivisions of `K4`, and a seeded sampler of
//! random square-free Berge graphs.
//!
//! Vertex labeling for prisms and hyperprisms: the `A` ends of all rungs
//! (strip 1 first, rungs in spec order), then the `B` ends in the same
//! order, then the interior vertices rung by rung, each walked from its `A`
//! end to its `B` end. A prism is the hyperprism with one rung per strip,
//! so both generators agree on it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{contains_square, is_berge_capped, BergeVerdict, Graph, VertexSet, DEFAULT_BERGE_CAP};

/// Random instances up to this size are re-checked with the brute-force
/// Berge verifier before being returned.
pub const GENERATOR_BERGE_CAP: usize = DEFAULT_BERGE_CAP;

/// Rejection-sampling budget of [`gen_square_free_berge`].
pub const GENERATION_ATTEMPTS: usize = 500;

/// Rung lengths (in edges) of a prism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrismSpec {
    pub lengths: [usize; 3],
}

impl PrismSpec {
    pub fn new(lengths: [usize; 3]) -> Self {
        PrismSpec { lengths }
    }
}

/// Rung lengths per strip of a hyperprism whose rungs within a strip are
/// vertex-disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperprismSpec {
    pub strips: [Vec<usize>; 3],
}

impl HyperprismSpec {
    pub fn new(strips: [Vec<usize>; 3]) -> Self {
        HyperprismSpec { strips }
    }

    fn check(&self) -> Result<()> {
        if self.strips.iter().any(Vec::is_empty) {
            return Err(Error::Spec("every strip needs at least one rung".into()));
        }
        let all: Vec<usize> = self.strips.iter().flatten().copied().collect();
        if all.contains(&0) {
            return Err(Error::Spec("rung lengths must be positive".into()));
        }
        if all.iter().any(|l| l % 2 != all[0] % 2) {
            return Err(Error::Spec(format!("rung lengths {all:?} mix parities")));
        }
        Ok(())
    }
}

/// A generated hyperprism together with its strip structure.
#[derive(Clone, Debug)]
pub struct Hyperprism {
    pub graph: Graph,
    pub a: [VertexSet; 3],
    pub b: [VertexSet; 3],
    pub c: [VertexSet; 3],
    pub validation: Validation,
}

/// Square-freeness and (if small enough) Berge status of a generated graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub square: Option<[usize; 4]>,
    /// `None` when the graph exceeds the verification cap.
    pub berge: Option<BergeVerdict>,
}

impl Validation {
    pub fn is_square_free(&self) -> bool {
        self.square.is_none()
    }

    /// Square-free, and not known to be non-Berge.
    pub fn is_acceptable(&self) -> bool {
        self.is_square_free() && self.berge.as_ref().is_none_or(BergeVerdict::is_berge)
    }
}

pub fn validate(g: &Graph, berge_cap: usize) -> Validation {
    let square = contains_square(g);
    let berge = (g.n() <= berge_cap).then(|| is_berge_capped(g, None).expect("uncapped check cannot fail"));
    Validation { square, berge }
}

pub fn gen_prism(spec: &PrismSpec) -> Result<Graph> {
    let strips = spec.lengths.map(|l| vec![l]);
    Ok(build_hyperprism(&HyperprismSpec::new(strips))?.graph)
}

pub fn gen_hyperprism(spec: &HyperprismSpec) -> Result<Hyperprism> {
    build_hyperprism(spec)
}

fn build_hyperprism(spec: &HyperprismSpec) -> Result<Hyperprism> {
    spec.check()?;
    let rungs: Vec<(usize, usize)> = spec
        .strips
        .iter()
        .enumerate()
        .flat_map(|(i, ls)| ls.iter().map(move |&l| (i, l)))
        .collect();
    let count = rungs.len();
    let n = 2 * count + rungs.iter().map(|&(_, l)| l - 1).sum::<usize>();
    let mut a: [VertexSet; 3] = std::array::from_fn(|_| VertexSet::new(n));
    let mut b: [VertexSet; 3] = std::array::from_fn(|_| VertexSet::new(n));
    let mut c: [VertexSet; 3] = std::array::from_fn(|_| VertexSet::new(n));
    let mut edges = Vec::new();
    let mut next = 2 * count;
    for (r, &(strip, len)) in rungs.iter().enumerate() {
        let (start, end) = (r, count + r);
        a[strip].insert(start);
        b[strip].insert(end);
        let mut prev = start;
        for _ in 1..len {
            c[strip].insert(next);
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, end));
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            for (x, y) in [(&a[i], &a[j]), (&b[i], &b[j])] {
                edges.extend(x.iter().flat_map(|u| y.iter().map(move |v| (u, v))));
            }
        }
    }
    let graph = Graph::from_edges(n, edges)?;
    let validation = validate(&graph, GENERATOR_BERGE_CAP);
    Ok(Hyperprism { graph, a, b, c, validation })
}

/// The line graph of `h`: one vertex per edge (edges in lexicographic
/// order, returned alongside), adjacent when the edges share an end.
pub fn line_graph(h: &Graph) -> (Graph, Vec<(usize, usize)>) {
    let edges: Vec<(usize, usize)> = h.edges().collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); h.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let adj = incident
        .iter()
        .flat_map(|es| es.iter().enumerate().flat_map(move |(k, &e)| es[k + 1..].iter().map(move |&f| (e, f))));
    let g = Graph::from_edges(edges.len(), adj).expect("line graph edges are valid");
    (g, edges)
}

/// Branch order for the six edges of `K4`.
pub const K4_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The subdivision of `K4` whose branch `K4_EDGES[i]` is a path with
/// `branches[i]` edges. Branch vertices are `0..4`; subdivision vertices
/// follow, branch by branch.
pub fn k4_subdivision(branches: &[usize; 6]) -> Result<Graph> {
    if branches.contains(&0) {
        return Err(Error::Spec("branch lengths must be positive".into()));
    }
    let n = 4 + branches.iter().map(|l| l - 1).sum::<usize>();
    let mut edges = Vec::new();
    let mut next = 4;
    for (&(u, v), &len) in K4_EDGES.iter().zip(branches) {
        let mut prev = u;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::from_edges(n, edges)
}

/// A proper 2-coloring, if `g` is bipartite.
pub fn two_coloring(g: &Graph) -> Option<Vec<bool>> {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let sv = side[v].expect("visited");
            for w in g.neighborhood(v).iter() {
                match side[w] {
                    None => {
                        side[w] = Some(!sv);
                        stack.push(w);
                    }
                    Some(sw) if sw == sv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(|s| s.expect("all visited")).collect())
}

/// The line graph of the subdivision of `K4` with the given branch lengths.
/// Fails unless the subdivision is bipartite.
pub fn gen_lk4_subdivision(branches: &[usize; 6]) -> Result<Graph> {
    let h = k4_subdivision(branches)?;
    if two_coloring(&h).is_none() {
        return Err(Error::Spec(format!("subdivision with branch lengths {branches:?} is not bipartite")));
    }
    Ok(line_graph(&h).0)
}

/// How a graph was built; written as the JSON sidecar of generated files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "snake_case")]
pub enum Construction {
    Prism { lengths: [usize; 3] },
    Hyperprism { strips: [Vec<usize>; 3] },
    Lk4 { branches: [usize; 6] },
    /// Random bipartite graph with every square broken by edge deletion.
    Bipartite { left: usize, right: usize, edge_probability: f64, seed: u64 },
    /// Line graph of a random bipartite graph with no 4-cycle.
    BipartiteLineGraph { left: usize, right: usize, edges: usize, seed: u64 },
}

impl Construction {
    /// Rebuilds the graph. Random families are reproduced from their seed.
    pub fn build(&self) -> Result<Graph> {
        match self {
            Construction::Prism { lengths } => gen_prism(&PrismSpec::new(*lengths)),
            Construction::Hyperprism { strips } => Ok(gen_hyperprism(&HyperprismSpec::new(strips.clone()))?.graph),
            Construction::Lk4 { branches } => gen_lk4_subdivision(branches),
            Construction::Bipartite { left, right, edge_probability, seed } => {
                Ok(random_bipartite(*left, *right, *edge_probability, &mut ChaCha8Rng::seed_from_u64(*seed)))
            }
            Construction::BipartiteLineGraph { left, right, edges, seed } => {
                random_c4_free_bipartite(*left, *right, *edges, &mut ChaCha8Rng::seed_from_u64(*seed))
                    .map(|h| line_graph(&h).0)
                    .ok_or_else(|| Error::Spec(format!("no 4-cycle-free bipartite graph from seed {seed}")))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub construction: Construction,
    pub validation: Validation,
}

/// Sidecar metadata accompanying a generated DIMACS file.
#[derive(Clone, Debug, Serialize)]
pub struct Sidecar<'a> {
    #[serde(flatten)]
    pub construction: &'a Construction,
    pub n: usize,
    pub m: usize,
    pub validation: &'a Validation,
}

impl Generated {
    pub fn sidecar(&self) -> Sidecar<'_> {
        Sidecar { construction: &self.construction, n: self.graph.n(), m: self.graph.m(), validation: &self.validation }
    }
}

/// Bipartite graph on `left + right` vertices (left side first) with each
/// cross pair an edge with probability `p`; squares are then removed one
/// edge at a time.
fn random_bipartite(left: usize, right: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let n = left + right;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..left {
        for v in left..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    loop {
        let g = Graph::from_edges(n, edges.iter().copied()).expect("valid bipartite edges");
        let Some([a, b, c, d]) = contains_square(&g) else {
            return g;
        };
        let square = [(a, b), (b, c), (c, d), (d, a)];
        let (x, y) = square[rng.random_range(0..4)];
        edges.retain(|&e| e != (x.min(y), x.max(y)));
    }
}

/// Bipartite graph with exactly `m` edges and no 4-cycle, built by random
/// insertion, or `None` if it got stuck.
fn random_c4_free_bipartite(left: usize, right: usize, m: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let n = left + right;
    let mut g = Graph::empty(n);
    let mut edges = Vec::new();
    let mut misses = 0;
    while edges.len() < m {
        let u = rng.random_range(0..left);
        let v = rng.random_range(left..n);
        let closes_square = g.has_edge(u, v)
            || g.neighborhood(v).iter().any(|a| g.neighborhood(u).iter().any(|b| g.has_edge(a, b)));
        if closes_square {
            misses += 1;
            if misses > 50 * m {
                return None;
            }
            continue;
        }
        edges.push((u, v));
        g = Graph::from_edges(n, edges.iter().copied()).expect("valid bipartite edges");
    }
    Some(g)
}

/// Rung lengths summing (with the `A`/`B` ends) to exactly `n` vertices:
/// each rung of length `l` contributes `l + 1` vertices. Extra rungs all go
/// to one strip, since two multi-rung strips always contain a square.
fn random_hyperprism_spec(n: usize, rng: &mut ChaCha8Rng) -> Option<HyperprismSpec> {
    let even = rng.random_bool(0.5);
    let lengths: &[usize] = if even { &[2, 2, 4, 6] } else { &[3, 3, 5] };
    let min_size = if even { 3 } else { 4 };
    let mut strips: [Vec<usize>; 3] = Default::default();
    let mut remaining = n as isize;
    let wide = rng.random_range(0..3);
    for strip in strips.iter_mut() {
        let l = lengths[rng.random_range(0..lengths.len())];
        strip.push(l);
        remaining -= l as isize + 1;
    }
    while remaining > 0 {
        let fits: Vec<usize> = lengths
            .iter()
            .copied()
            .filter(|&l| {
                let rest = remaining - (l as isize + 1);
                rest == 0 || rest >= min_size
            })
            .collect();
        if fits.is_empty() {
            return None;
        }
        let l = fits[rng.random_range(0..fits.len())];
        strips[wide].push(l);
        remaining -= l as isize + 1;
    }
    (remaining == 0).then_some(HyperprismSpec::new(strips))
}

/// A prism with exactly `n` vertices: even rungs of length at least 2 when
/// `n` is odd, odd rungs of length at least 3 when `n` is even.
fn random_prism_spec(n: usize, rng: &mut ChaCha8Rng) -> Option<PrismSpec> {
    let (min, step) = if n % 2 == 1 { (2, 2) } else { (3, 2) };
    let total = n.checked_sub(3)?;
    if total < 3 * min {
        return None;
    }
    let mut lengths = [min; 3];
    let mut extra = (total - 3 * min) / step;
    while extra > 0 {
        lengths[rng.random_range(0..3)] += step;
        extra -= 1;
    }
    Some(PrismSpec::new(lengths))
}

/// A square-free Berge graph on exactly `n` vertices, deterministic in
/// `seed`. Each attempt picks one family (random bipartite with squares
/// removed, line graph of a 4-cycle-free bipartite graph, even or odd prism,
/// parallel-rung hyperprism), builds it, and re-validates it: square-free
/// always, Berge when `n <= GENERATOR_BERGE_CAP`.
pub fn gen_square_free_berge(n: usize, seed: u64) -> Result<Generated> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATION_ATTEMPTS {
        let family = rng.random_range(0..4u8);
        let sub_seed: u64 = rng.random();
        let built = match family {
            0 => {
                let left = rng.random_range(n / 3..=n - n / 3);
                let right = n - left;
                let p = (rng.random_range(1.5..3.5) / n.max(2) as f64).min(1.0);
                let g = random_bipartite(left, right, p, &mut ChaCha8Rng::seed_from_u64(sub_seed));
                Some((g, Construction::Bipartite { left, right, edge_probability: p, seed: sub_seed }))
            }
            1 => {
                // aim for an average degree a little above 2 in the root graph
                let verts = (n * 9 / 10).max(2);
                let left = (verts / 2).max(1);
                let right = (verts - left).max(1);
                random_c4_free_bipartite(left, right, n, &mut ChaCha8Rng::seed_from_u64(sub_seed))
                    .map(|h| (line_graph(&h).0, Construction::BipartiteLineGraph { left, right, edges: n, seed: sub_seed }))
            }
            2 => random_prism_spec(n, &mut rng)
                .map(|spec| (gen_prism(&spec), Construction::Prism { lengths: spec.lengths }))
                .and_then(|(g, c)| g.ok().map(|g| (g, c))),
            _ => random_hyperprism_spec(n, &mut rng).and_then(|spec| {
                gen_hyperprism(&spec).ok().map(|h| (h.graph, Construction::Hyperprism { strips: spec.strips }))
            }),
        };
        let Some((graph, construction)) = built else { continue };
        if graph.n() != n {
            continue;
        }
        let validation = validate(&graph, GENERATOR_BERGE_CAP);
        if validation.is_acceptable() {
            return Ok(Generated { graph, construction, validation });
        }
    }
    Err(Error::GenerationExhausted { attempts: GENERATION_ATTEMPTS })
}

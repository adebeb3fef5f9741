//! Library results checked against the brute-force oracles in `common`.

mod common;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use squarefree_berge::generators::{self, HyperprismSpec, PrismSpec};
use squarefree_berge::graph::{
    contains_square, find_triads, is_berge_capped, is_square_free, dropped_set_index, maximal_cliques, omega,
};
use squarefree_berge::partition::{find_good_partition, verify_good_partition, GoodPartition};
use squarefree_berge::recolor::{find_reducing_swap, merge_colorings, bad_vertices, Child, PartialColoring, SwapClass};
use squarefree_berge::solver::{self, leaf_color};
use squarefree_berge::{Clique, Graph, VertexSet};

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn clique_lists(g: &Graph) -> BTreeSet<Vec<usize>> {
    maximal_cliques(g).iter().map(|c| c.vertices().to_vec()).collect()
}

#[test]
fn cliques_squares_triads_on_all_graphs_up_to_six() {
    for g in hereditary_classes(6, |_| true) {
        assert_eq!(clique_lists(&g), naive_maximal_cliques(&g), "{g:?}");
        assert_eq!(omega(&g), naive_omega(&g));
        assert_eq!(contains_square(&g).is_some(), naive_has_square(&g), "{g:?}");
        assert_eq!(find_triads(&g), naive_triads(&g));
    }
}

#[test]
fn berge_check_matches_subset_enumeration() {
    for g in hereditary_classes(6, |_| true) {
        assert_eq!(is_berge_capped(&g, None).unwrap().is_berge(), naive_is_berge(&g), "{g:?}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..150 {
        let g = random_graph(7 + i % 6, [0.2, 0.4, 0.6][i % 3], &mut rng);
        assert_eq!(is_berge_capped(&g, None).unwrap().is_berge(), naive_is_berge(&g), "{g:?}");
    }
}

#[test]
fn reported_squares_and_holes_are_genuine() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..100 {
        let g = random_graph(8 + i % 5, 0.35, &mut rng);
        if let Some([a, b, c, d]) = contains_square(&g) {
            assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && g.has_edge(d, a));
            assert!(!g.has_edge(a, c) && !g.has_edge(b, d));
        }
        if let squarefree_berge::graph::BergeVerdict::NotBerge { kind, cycle } = is_berge_capped(&g, None).unwrap() {
            let h = match kind {
                squarefree_berge::error::OddCycleKind::OddHole => g.clone(),
                squarefree_berge::error::OddCycleKind::OddAntihole => g.complement(),
            };
            let k = cycle.len();
            assert!(k >= 5 && k % 2 == 1);
            for i in 0..k {
                for j in i + 1..k {
                    let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                    assert_eq!(h.has_edge(cycle[i], cycle[j]), consecutive, "{cycle:?}");
                }
            }
        }
    }
}

#[test]
fn cliques_of_generated_graphs() {
    for seed in 0..100u64 {
        let n = 6 + (seed as usize % 7);
        let g = generators::gen_square_free_berge(n, seed).unwrap().graph;
        assert_eq!(clique_lists(&g), naive_maximal_cliques(&g));
        assert!(maximal_cliques(&g).len() <= n * n);
    }
    let prism = generators::gen_prism(&PrismSpec::new([2, 2, 2])).unwrap();
    assert_eq!(maximal_cliques(&prism).len(), 8);
    assert_eq!(naive_maximal_cliques(&prism).len(), 8);
    assert_eq!(maximal_cliques(&Graph::complete(4)).len(), 1);
}

#[test]
fn chromatic_number_equals_omega_on_small_outputs() {
    for seed in 0..60u64 {
        let n = 6 + (seed as usize % 9);
        let g = generators::gen_square_free_berge(n, seed).unwrap().graph;
        let res = solver::color(&g).unwrap();
        assert_eq!(res.colors_used, naive_chromatic(&g), "seed {seed}");
    }
    let lk4 = generators::gen_lk4_subdivision(&[2; 6]).unwrap();
    assert_eq!(naive_chromatic(&lk4), 3);
    assert_eq!(solver::color(&lk4).unwrap().colors_used, 3);
    let prism = generators::gen_prism(&PrismSpec::new([2, 2, 2])).unwrap();
    assert_eq!(naive_chromatic(&prism), 3);
    assert!(leaf_color(&prism, 3).unwrap().is_proper(&prism));
}

#[test]
fn partition_verifier_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut good = 0;
    for seed in 0..40u64 {
        let n = 6 + (seed as usize % 5);
        let g = generators::gen_square_free_berge(n, seed).unwrap().graph;
        for _ in 0..200 {
            let mut parts: [Vec<usize>; 5] = Default::default();
            for v in 0..n {
                // keep the cutset small so that (ii) is not always the issue
                let slot = if rng.random_bool(0.3) { rng.random_range(0..3) } else { 3 + rng.random_range(0..2) };
                parts[slot].push(v);
            }
            let set = |vs: &[usize]| VertexSet::from_slice(n, vs);
            let p = GoodPartition { k1: set(&parts[0]), k2: set(&parts[1]), k3: set(&parts[2]), l: set(&parts[3]), r: set(&parts[4]) };
            let ours = verify_good_partition(&g, &p).unwrap().is_good();
            let naive = naive_is_good(&g, &parts[0], &parts[1], &parts[2], &parts[3], &parts[4]);
            assert_eq!(ours, naive, "{g:?} {p:?}");
            good += ours as usize;
        }
    }
    assert!(good > 0, "sample contains good partitions");
}

#[test]
fn partition_search_agrees_with_exhaustive_search() {
    let mut graphs = small_square_free_berge(6);
    for seed in 0..30u64 {
        graphs.push(generators::gen_square_free_berge(8 + seed as usize % 3, seed).unwrap().graph);
    }
    for g in &graphs {
        let found = find_good_partition(g).unwrap();
        if let Some(p) = &found {
            assert!(verify_good_partition(g, p).unwrap().is_good());
        }
        assert_eq!(found.is_some(), brute_force_good_partition(g).is_some(), "{g:?}");
    }
}

#[test]
fn dropped_set_index_yields_cliques() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut checked = 0;
    while checked < 200 {
        let t = rng.random_range(2..4);
        let sizes: Vec<usize> = (0..t).map(|_| rng.random_range(1..4)).collect();
        let ksize = rng.random_range(0..3);
        let n = ksize + sizes.iter().sum::<usize>();
        let mut xs: Vec<Vec<usize>> = Vec::new();
        let mut next = ksize;
        for &s in &sizes {
            xs.push((next..next + s).collect());
            next += s;
        }
        let sparse = rng.random_range(0..t);
        let mut edges = Vec::new();
        for u in 0..ksize {
            for v in u + 1..ksize {
                edges.push((u, v));
            }
        }
        for (i, x) in xs.iter().enumerate() {
            for (a, &u) in x.iter().enumerate() {
                for &v in &x[a + 1..] {
                    if i != sparse || rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            for y in &xs[i + 1..] {
                edges.extend(x.iter().flat_map(|&u| y.iter().map(move |&v| (u, v))));
            }
        }
        for u in 0..ksize {
            let skip = rng.random_range(0..t);
            for (i, x) in xs.iter().enumerate() {
                for &v in x {
                    if i != skip || rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
        }
        let g = Graph::from_edges(n, edges).unwrap();
        if !is_square_free(&g) {
            continue;
        }
        let k = Clique::new(&g, VertexSet::from_slice(n, &(0..ksize).collect::<Vec<_>>())).unwrap();
        let sets: Vec<VertexSet> = xs.iter().map(|x| VertexSet::from_slice(n, x)).collect();
        let i = dropped_set_index(&g, &k, &sets).unwrap();
        let rest: Vec<usize> = (0..n).filter(|v| !xs[i].contains(v)).collect();
        assert!(is_clique(&g, &rest));
        assert!((0..i).all(|j| {
            let other: Vec<usize> = (0..n).filter(|v| !xs[j].contains(v)).collect();
            !is_clique(&g, &other)
        }));
        checked += 1;
    }
}

#[test]
fn line_graph_degrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..50 {
        let h = random_graph(9, 0.3, &mut rng);
        let (l, edges) = generators::line_graph(&h);
        assert_eq!(l.n(), h.m());
        for (i, &(u, v)) in edges.iter().enumerate() {
            assert_eq!(l.degree(i), h.degree(u) + h.degree(v) - 2);
        }
    }
}

/// Vertices of `g` lying on some chordless path from `a` to `b` with
/// interior in `c`, by exhaustive search.
fn rung_vertices(g: &Graph, a: &[usize], b: &[usize], c: &[usize]) -> BTreeSet<usize> {
    fn walk(g: &Graph, path: &mut Vec<usize>, b: &[usize], c: &[usize], out: &mut BTreeSet<usize>) {
        let tail = *path.last().unwrap();
        let chordless = |w: usize, path: &[usize]| path[..path.len() - 1].iter().all(|&p| !g.has_edge(p, w));
        for &z in b {
            if g.has_edge(tail, z) && chordless(z, path) {
                out.extend(path.iter().copied());
                out.insert(z);
            }
        }
        for &w in c {
            if !path.contains(&w) && g.has_edge(tail, w) && chordless(w, path) {
                path.push(w);
                walk(g, path, b, c, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for &s in a {
        walk(g, &mut vec![s], b, c, &mut out);
    }
    out
}

#[test]
fn hyperprism_vertices_lie_on_rungs() {
    let specs: [[Vec<usize>; 3]; 4] = [
        [vec![2, 2], vec![2], vec![2]],
        [vec![2, 4, 6], vec![2], vec![4]],
        [vec![3], vec![3, 5], vec![5]],
        [vec![1], vec![1], vec![1, 1]],
    ];
    for strips in specs {
        let h = generators::gen_hyperprism(&HyperprismSpec::new(strips)).unwrap();
        for i in 0..3 {
            let (a, b, c) = (h.a[i].to_vec(), h.b[i].to_vec(), h.c[i].to_vec());
            let on_rungs = rung_vertices(&h.graph, &a, &b, &c);
            let strip: BTreeSet<usize> = a.iter().chain(&b).chain(&c).copied().collect();
            assert_eq!(on_rungs, strip);
        }
        if h.graph.n() <= 16 && h.validation.is_square_free() {
            assert!(naive_is_berge(&h.graph));
        }
    }
}

#[test]
fn small_prisms_are_square_free_berge() {
    for lengths in [[2, 2, 2], [3, 3, 3], [2, 2, 4], [3, 3, 5], [2, 4, 4]] {
        let g = generators::gen_prism(&PrismSpec::new(lengths)).unwrap();
        assert!(!naive_has_square(&g));
        assert!(naive_is_berge(&g), "{lengths:?}");
    }
    assert!(naive_has_square(&generators::gen_prism(&PrismSpec::new([1, 1, 1])).unwrap()));
}

/// Whether `g[s]` is a prism: two disjoint triangles joined by three
/// disjoint paths, with no other edges.
fn induces_prism(g: &Graph, s: &[usize]) -> bool {
    let (h, _) = g.induced(&VertexSet::from_slice(g.n(), s));
    let n = h.n();
    let triangles: Vec<[usize; 3]> = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
        .filter(|&[a, b, c]| h.has_edge(a, b) && h.has_edge(b, c) && h.has_edge(a, c))
        .collect();
    if triangles.len() != 2 || triangles[0].iter().any(|v| triangles[1].contains(v)) {
        return false;
    }
    let tri: Vec<usize> = triangles.concat();
    let degrees_ok = (0..h.n()).all(|v| h.degree(v) == if tri.contains(&v) { 3 } else { 2 });
    if !degrees_ok {
        return false;
    }
    // drop the triangle edges; what remains must be three paths, each from
    // one triangle to the other
    let rungs: Vec<(usize, usize)> = h
        .edges()
        .filter(|&(u, v)| !(triangles.iter().any(|t| t.contains(&u) && t.contains(&v))))
        .collect();
    let rest = Graph::from_edges(h.n(), rungs).unwrap();
    let comps = squarefree_berge::graph::components(&rest, &rest.vertices());
    comps.len() == 3
        && comps.iter().all(|c| {
            c.iter().filter(|v| triangles[0].contains(v)).count() == 1
                && c.iter().filter(|v| triangles[1].contains(v)).count() == 1
        })
}

#[test]
fn lk4_line_graph_contains_a_prism() {
    let g = generators::gen_lk4_subdivision(&[2; 6]).unwrap();
    let found = (0u64..1 << g.n()).any(|m| m.count_ones() >= 6 && induces_prism(&g, &subset(g.n(), m)));
    assert!(found);
    assert!(naive_is_berge(&g));
    assert!(!naive_has_square(&g));
    assert_eq!(naive_omega(&g), 3);
}

fn coloring(n: usize, pairs: &[(usize, usize)]) -> PartialColoring {
    let mut c = PartialColoring::new(n);
    for &(v, col) in pairs {
        c.set(v, col);
    }
    c
}

#[test]
fn prism_merge_example() {
    // a1 = 0, b1 = 3, and 6 is the interior of the a1-b1 rung
    let g = generators::gen_prism(&PrismSpec::new([2, 2, 2])).unwrap();
    let set = |vs: &[usize]| VertexSet::from_slice(9, vs);
    let p = GoodPartition { k1: set(&[0]), k2: set(&[]), k3: set(&[3]), l: set(&[6]), r: set(&[1, 2, 4, 5, 7, 8]) };
    assert!(verify_good_partition(&g, &p).unwrap().is_good());
    let (g1, m1) = g.induced(&g.vertices().difference(&p.r));
    let (g2, m2) = g.induced(&g.vertices().difference(&p.l));
    let c1 = leaf_color(&g1, 3).unwrap().map_into(9, &m1);
    let c2 = leaf_color(&g2, 3).unwrap().map_into(9, &m2);
    let merged = merge_colorings(&g, &p, &c1, &c2, 3).unwrap();
    assert!(solver::verify_coloring(&g, &merged.coloring).is_valid());
    assert_eq!(merged.coloring.colors_used(), naive_chromatic(&g));
}

#[test]
fn agreeing_children_merge_without_swaps() {
    let g = Graph::cycle(6);
    let set = |vs: &[usize]| VertexSet::from_slice(6, vs);
    let p = GoodPartition { k1: set(&[0]), k2: set(&[]), k3: set(&[3]), l: set(&[1, 2]), r: set(&[4, 5]) };
    let c1 = coloring(6, &[(0, 1), (1, 2), (2, 1), (3, 2)]);
    let c2 = coloring(6, &[(0, 1), (5, 2), (4, 1), (3, 2)]);
    let merged = merge_colorings(&g, &p, &c1, &c2, 2).unwrap();
    assert!(merged.swaps.is_empty());
    assert!(merged.coloring.is_proper(&g));
}

#[test]
fn free_bad_vertex_is_swapped_first() {
    // K1 = {0}, K3 = {1, 2}, L = {3, 6}, R = {4, 5}. Vertex 1 reaches 0 in
    // both children through its color pair, vertex 2 does not.
    let g = Graph::from_edges(7, [(1, 2), (0, 6), (6, 3), (3, 1), (0, 4), (4, 1), (2, 5)]).unwrap();
    let set = |vs: &[usize]| VertexSet::from_slice(7, vs);
    let p = GoodPartition { k1: set(&[0]), k2: set(&[]), k3: set(&[1, 2]), l: set(&[3, 6]), r: set(&[4, 5]) };
    let c1 = coloring(7, &[(0, 2), (6, 1), (3, 2), (1, 1), (2, 3)]);
    let c2 = coloring(7, &[(0, 2), (4, 1), (1, 2), (2, 1), (5, 2)]);
    let bad = bad_vertices(&p, &c1, &c2);
    assert_eq!(bad.to_vec(), vec![1, 2]);
    let swap = find_reducing_swap(&g, &p, &c1, &c2, &bad, 3).unwrap();
    assert_eq!((swap.side, swap.seed, swap.pair, swap.class), (Child::One, 2, (1, 3), SwapClass::Free));
    assert_eq!(swap.component.to_vec(), vec![1, 2]);
}

#[test]
fn single_free_vertex() {
    let g = Graph::path(4);
    let set = |vs: &[usize]| VertexSet::from_slice(4, vs);
    // K1 = {0}, L = {1}, K3 = {2}, R = {3}
    let p = GoodPartition { k1: set(&[0]), k2: set(&[]), k3: set(&[2]), l: set(&[1]), r: set(&[3]) };
    let c1 = coloring(4, &[(0, 1), (1, 3), (2, 1)]);
    let c2 = coloring(4, &[(0, 1), (2, 2), (3, 1)]);
    let bad = bad_vertices(&p, &c1, &c2);
    let swap = find_reducing_swap(&g, &p, &c1, &c2, &bad, 3).unwrap();
    assert_eq!((swap.seed, swap.class), (2, SwapClass::Free));
    let merged = merge_colorings(&g, &p, &c1, &c2, 3).unwrap();
    assert_eq!(merged.swaps.len(), 1);
    assert!(merged.coloring.is_proper(&g));
}

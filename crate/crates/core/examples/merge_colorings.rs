//! Colors the two sides of a good partition independently, then merges
//! them and prints the swaps.

use squarefree_berge::generators::gen_square_free_berge;
use squarefree_berge::graph::omega;
use squarefree_berge::partition::find_good_partition;
use squarefree_berge::recolor::{bad_vertices, merge_colorings};
use squarefree_berge::solver::leaf_color;

fn main() -> squarefree_berge::Result<()> {
    for seed in 0..40 {
        let g = gen_square_free_berge(16, seed)?.graph;
        let Some(p) = find_good_partition(&g)? else { continue };
        let k = omega(&g);
        let (g1, m1) = g.induced(&g.vertices().difference(&p.r));
        let (g2, m2) = g.induced(&g.vertices().difference(&p.l));
        let c1 = leaf_color(&g1, k)?.map_into(g.n(), &m1);
        let mut c2 = leaf_color(&g2, k)?.map_into(g.n(), &m2);
        // reverse the palette of the second side so the two disagree
        c2.permute(&std::iter::once(0).chain((1..=k).rev()).collect::<Vec<_>>());
        let out = merge_colorings(&g, &p, &c1, &c2, k)?;
        if out.swaps.is_empty() {
            continue;
        }
        println!("seed {seed}: n = {}, omega = {k}, |K3| = {}", g.n(), p.k3.len());
        println!("  bad before alignment: {:?}", bad_vertices(&p, &c1, &c2).to_vec());
        for s in &out.swaps {
            println!("  {:?} swap on child {:?} at {} colors {:?}: bad {} -> {}", s.class, s.side, s.seed, s.pair, s.bad_before, s.bad_after);
        }
        println!("  merged coloring proper: {}", out.coloring.is_proper(&g));
        return Ok(());
    }
    println!("no instance needed a swap");
    Ok(())
}

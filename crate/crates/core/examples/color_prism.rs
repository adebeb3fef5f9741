//! Colors a prism and prints the coloring and the decomposition summary.

use squarefree_berge::generators::{gen_prism, PrismSpec};
use squarefree_berge::solver;

fn main() -> squarefree_berge::Result<()> {
    let g = gen_prism(&PrismSpec::new([2, 4, 4]))?;
    let res = solver::color(&g)?;
    println!("prism: n = {}, m = {}, omega = {}", g.n(), g.m(), res.omega);
    for (v, c) in res.coloring.iter() {
        println!("  vertex {v:2} -> color {c}");
    }
    println!(
        "{} colors; tree has {} nodes ({} leaves), {} swaps",
        res.colors_used,
        res.tree.node_count(),
        res.tree.leaf_count(),
        res.stats.swaps
    );
    println!("{}", solver::verify_coloring(&g, &res.coloring));
    Ok(())
}

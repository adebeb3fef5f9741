//! Lists the maximal cliques of a generated graph.

use squarefree_berge::generators::gen_square_free_berge;
use squarefree_berge::graph::{maximal_cliques, omega};

fn main() -> squarefree_berge::Result<()> {
    let g = gen_square_free_berge(20, 7)?.graph;
    let cliques = maximal_cliques(&g);
    println!("n = {}, m = {}: {} maximal cliques (n^2 = {})", g.n(), g.m(), cliques.len(), g.n() * g.n());
    for k in &cliques {
        println!("  {:?}", k.vertices().to_vec());
    }
    println!("omega = {}", omega(&g));
    Ok(())
}

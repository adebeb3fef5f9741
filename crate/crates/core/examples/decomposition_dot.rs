//! Prints the decomposition tree of a generated graph as Graphviz DOT.
//! Pipe into `dot -Tsvg` to render.

use squarefree_berge::generators::gen_square_free_berge;
use squarefree_berge::solver;

fn main() -> squarefree_berge::Result<()> {
    let g = gen_square_free_berge(24, 3)?.graph;
    let res = solver::color(&g)?;
    eprintln!("n = {}, {} nodes, depth {}", g.n(), res.tree.node_count(), res.tree.depth());
    print!("{}", res.tree.to_dot());
    Ok(())
}

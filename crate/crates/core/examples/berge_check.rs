//! Runs the square and Berge checks on a few small graphs.

use squarefree_berge::graph::{contains_square, is_berge, BergeVerdict};
use squarefree_berge::generators::gen_lk4_subdivision;
use squarefree_berge::Graph;

fn main() -> squarefree_berge::Result<()> {
    let graphs = [
        ("C4", Graph::cycle(4)),
        ("C5", Graph::cycle(5)),
        ("complement of C7", Graph::cycle(7).complement()),
        ("C6", Graph::cycle(6)),
        ("L(K4) subdivided", gen_lk4_subdivision(&[2, 2, 2, 2, 2, 4])?),
    ];
    for (name, g) in &graphs {
        let square = contains_square(g);
        let verdict = match is_berge(g)? {
            BergeVerdict::Berge => "Berge".to_string(),
            BergeVerdict::NotBerge { kind, cycle } => format!("{kind:?} on {cycle:?}"),
        };
        println!("{name:18} square: {square:?}; {verdict}");
    }
    Ok(())
}

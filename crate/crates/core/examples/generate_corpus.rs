//! Writes a small corpus of generated graphs as DIMACS plus JSON sidecars
//! into a directory (default `corpus/`).

use std::fs;
use std::path::PathBuf;

use squarefree_berge::dimacs;
use squarefree_berge::generators::gen_square_free_berge;

fn main() -> squarefree_berge::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    fs::create_dir_all(&dir)?;
    for seed in 0..10u64 {
        let n = 10 + 5 * seed as usize;
        let generated = gen_square_free_berge(n, seed)?;
        let path = dir.join(format!("random_n{n}_s{seed}.col"));
        fs::write(&path, dimacs::graph_to_string(&generated.graph))?;
        let sidecar = serde_json::to_string_pretty(&generated.sidecar()).expect("sidecar serializes");
        fs::write(path.with_extension("col.json"), sidecar + "\n")?;
        println!("{} (m = {})", path.display(), generated.graph.m());
    }
    Ok(())
}

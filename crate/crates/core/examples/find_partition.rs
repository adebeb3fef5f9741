//! Finds and verifies a good partition of a prism.

use squarefree_berge::generators::{gen_prism, PrismSpec};
use squarefree_berge::partition::{enumerate_frames, search_good_partition, verify_good_partition, SearchOptions};

fn main() -> squarefree_berge::Result<()> {
    let g = gen_prism(&PrismSpec::new([1, 3, 3]))?;
    println!("prism on {} vertices, {} frames", g.n(), enumerate_frames(&g).count());
    let search = search_good_partition(&g, SearchOptions::default())?;
    println!("refined {} frames, skipped {}", search.frames_refined, search.frames_skipped);
    let Some(found) = search.found else {
        println!("no good partition");
        return Ok(());
    };
    let p = &found.partition;
    println!("K1 = {:?}", p.k1.to_vec());
    println!("K2 = {:?}", p.k2.to_vec());
    println!("K3 = {:?}", p.k3.to_vec());
    println!("L  = {:?}", p.l.to_vec());
    println!("R  = {:?}", p.r.to_vec());
    println!("triad {:?}: {:?}", found.triad, verify_good_partition(&g, p)?);
    println!("{}", serde_json::to_string(p).expect("partition serializes"));
    Ok(())
}

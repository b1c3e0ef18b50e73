//! The block CSR structure: per-block nonzeros and average partial degree,
//! partial neighbor lists, and the versioned binary dump/load round trip.
//!
//! Run: cargo run --example block_layout

use bbtc::bcsr::{build_block_graph, BlockGraph};
use bbtc::gen::gnp_edges;
use bbtc::graph::{canonicalize, degree_order, RawEdgeList};
use bbtc::partition::partition_symmetric;

fn main() {
    let raw = RawEdgeList::from_edges(gnp_edges(120, 0.08, 5));
    let g = degree_order(&canonicalize(&raw));
    let pv = partition_symmetric(&g, 4);
    let bg = build_block_graph(&g, &pv);

    println!("cuts: {:?}", pv.cuts());
    println!("block grid (nnz, avg partial degree):");
    let p = bg.part_count();
    for i in 0..p {
        print!("  ");
        for j in 0..p {
            if j < i {
                print!("{:>14}", "");
            } else {
                let b = bg.block(i, j);
                print!("{:>6} ({:>4.1}) ", b.nnz(), b.avg_degree());
            }
        }
        println!();
    }

    // Partial neighbor lists: one vertex's neighbors split across parts.
    let u = pv.part_range(0).next_back().unwrap_or(0);
    println!("N(G, {u}) = {:?}", g.neighbors(u));
    for j in 0..p {
        let partial: Vec<usize> = bg.partial_neighbors(0, j, u).collect();
        println!("  N(G_0,{j}, {u}) = {partial:?}");
    }

    // Binary image round trip.
    let mut bytes = Vec::new();
    bg.write_to(&mut bytes).unwrap();
    let back = BlockGraph::read_from(&mut bytes.as_slice()).unwrap();
    println!(
        "binary image: {} bytes, round-trip equal: {}",
        bytes.len(),
        back == bg
    );
}

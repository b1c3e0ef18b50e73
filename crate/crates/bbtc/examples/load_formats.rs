//! Reading the two supported input formats and what canonicalization does
//! to messy input (duplicates, both orientations, self-loops).
//!
//! Run: cargo run --example load_formats

use std::io::Cursor;

use bbtc::graph::canonicalize;
use bbtc::io::{read_edge_list, read_matrix_market};

fn main() {
    let edge_text = "\
# comment lines start with '#' or '%'
0 1
1 0
2 2
1 2
1 2
0 2
";
    let raw = read_edge_list(Cursor::new(edge_text)).unwrap();
    println!("edge list: {} raw pairs", raw.edges.len());
    let g = canonicalize(&raw);
    println!(
        "canonical: n = {}, m = {} (dup/self-loop cleanup)",
        g.vertex_count(),
        g.edge_count()
    );
    for u in 0..g.vertex_count() {
        println!("  N({u}) = {:?}", g.neighbors(u));
    }

    let mm_text = "\
%%MatrixMarket matrix coordinate pattern symmetric
% a triangle, 1-based ids
3 3 3
2 1
3 1
3 2
";
    let raw = read_matrix_market(Cursor::new(mm_text)).unwrap();
    let g = canonicalize(&raw);
    println!(
        "matrix market: n = {}, m = {}, edges = {:?}",
        g.vertex_count(),
        g.edge_count(),
        g.edges().collect::<Vec<_>>()
    );
}

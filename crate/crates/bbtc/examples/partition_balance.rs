//! How the symmetric rectilinear partition balances block loads as the
//! part count grows: lambda (max/avg block nonzeros) and the c ratios.
//!
//! Run: cargo run --release --example partition_balance

use bbtc::gen::rmat_edges;
use bbtc::gen::RmatProbs;
use bbtc::graph::{canonicalize, degree_order, RawEdgeList};
use bbtc::partition::{auto_parts, partition_stats, partition_symmetric};

fn main() {
    let raw = RawEdgeList::from_edges(rmat_edges(13, 8, RmatProbs::default(), 9));
    let g = degree_order(&canonicalize(&raw));
    println!(
        "rmat scale-13 fixture: n = {}, m = {}, auto p = {}",
        g.vertex_count(),
        g.edge_count(),
        auto_parts(&g)
    );
    println!(
        "{:>4} {:>10} {:>10} {:>8} {:>8} {:>8}",
        "p", "m_max", "m_avg", "lambda", "c_max", "c_avg"
    );
    for p in [1usize, 2, 4, 8, 16, 32, 64] {
        let pv = partition_symmetric(&g, p);
        let s = partition_stats(&g, &pv);
        println!(
            "{:>4} {:>10} {:>10.1} {:>8.3} {:>8.3} {:>8.3}",
            s.p, s.m_max, s.m_avg, s.lambda, s.c_max, s.c_avg
        );
    }
}

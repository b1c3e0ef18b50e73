//! The three sequential baselines on one graph: merge intersection,
//! hashmap marking, and the degree-threshold hybrid over a K grid.
//!
//! Run: cargo run --release --example sequential_baselines

use std::time::Instant;

use bbtc::gen::rmat_edges;
use bbtc::gen::RmatProbs;
use bbtc::graph::{canonicalize, degree_order, RawEdgeList};
use bbtc::kernels::{tc_hash, tc_latapy, tc_list, LatapyConfig, ScratchMap};

fn main() {
    let raw = RawEdgeList::from_edges(rmat_edges(14, 8, RmatProbs::default(), 3));
    let g = degree_order(&canonicalize(&raw));
    println!("n = {}, m = {}", g.vertex_count(), g.edge_count());

    let t = Instant::now();
    let by_list = tc_list(&g);
    println!(
        "list kernel:   tau = {by_list:>10}  ({:.3}s)",
        t.elapsed().as_secs_f64()
    );

    let mut scratch = ScratchMap::new(g.vertex_count());
    let t = Instant::now();
    let by_hash = tc_hash(&g, &mut scratch);
    println!(
        "hash kernel:   tau = {by_hash:>10}  ({:.3}s)",
        t.elapsed().as_secs_f64()
    );
    assert_eq!(by_list, by_hash);

    for k in [0u64, 2, 8, 32, 64] {
        let t = Instant::now();
        let tau = tc_latapy(&g, LatapyConfig::new(k));
        println!(
            "hybrid K={k:<4}  tau = {tau:>10}  ({:.3}s)",
            t.elapsed().as_secs_f64()
        );
        assert_eq!(tau, by_list);
    }
    println!("all baselines agree");
}

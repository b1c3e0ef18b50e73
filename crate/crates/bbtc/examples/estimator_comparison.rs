//! Comparing the four workload estimators against instrumented ground
//! truth: which ordering surfaces the truly heavy tasks earliest.
//!
//! Run: cargo run --release --example estimator_comparison

use bbtc::bcsr::build_block_graph;
use bbtc::gen::{rmat_edges, RmatProbs};
use bbtc::graph::{canonicalize, degree_order, RawEdgeList};
use bbtc::partition::{auto_parts, partition_symmetric};
use bbtc::tasking::{
    build_task_list, coverage_table, fraction_of_true_top_in_prefix, Estimator,
    DEFAULT_DENSE_THRESHOLD,
};

fn main() {
    let raw = RawEdgeList::from_edges(rmat_edges(12, 8, RmatProbs::default(), 1));
    let g = degree_order(&canonicalize(&raw));
    let p = auto_parts(&g);
    let pv = partition_symmetric(&g, p);
    let bg = build_block_graph(&g, &pv);

    println!("rmat scale-12, p = {p}");
    println!("least queue prefix (% of tasks) needed to cover the true top-x heaviest:");
    println!(
        "{:>9} {:>7} {:>7} {:>7} {:>7} {:>7}",
        "estimator", "x=1", "x=4", "x=8", "x=16", "x=32"
    );
    for estimator in Estimator::ALL {
        let ordered = build_task_list(&bg, estimator, DEFAULT_DENSE_THRESHOLD);
        let rows = coverage_table(&bg, &ordered, &[1, 4, 8, 16, 32]);
        print!("{:>9}", estimator.to_string());
        for row in rows {
            print!(" {:>6.1}%", 100.0 * row.min_prefix_fraction);
        }
        let decile = (ordered.len() as f64 * 0.10).ceil() as usize;
        let hit = fraction_of_true_top_in_prefix(&bg, &ordered, 16, decile);
        println!("   (top-16 in first 10%: {:.0}%)", hit * 100.0);
    }
}

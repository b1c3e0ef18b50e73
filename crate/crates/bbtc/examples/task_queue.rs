//! Task composition and queue ordering: the canonical p=3 triplet list,
//! then estimated weights and dense/sparse classification on a real queue.
//!
//! Run: cargo run --example task_queue

use bbtc::bcsr::build_block_graph;
use bbtc::gen::gnp_edges;
use bbtc::graph::{canonicalize, degree_order, RawEdgeList};
use bbtc::partition::partition_symmetric;
use bbtc::tasking::{build_task_list, compose_tasks, Estimator, TaskList, DEFAULT_DENSE_THRESHOLD};

fn main() {
    let raw = RawEdgeList::from_edges(gnp_edges(90, 0.12, 11));
    let g = degree_order(&canonicalize(&raw));
    let pv = partition_symmetric(&g, 3);
    let bg = build_block_graph(&g, &pv);

    let composed = compose_tasks(&bg);
    println!(
        "p = 3 composes {} tasks (p(p+1)(p+2)/6 = {}):",
        composed.len(),
        TaskList::expected_len(3)
    );
    for t in composed.tasks() {
        print!(" {:?}", t.triplet());
    }
    println!("\n");

    let ordered = build_task_list(&bg, Estimator::Bbtc, DEFAULT_DENSE_THRESHOLD);
    println!(
        "{:>5} {:>10} {:>12} {:>7}",
        "rank", "task", "est_weight", "dense"
    );
    for (rank, t) in ordered.tasks().iter().enumerate() {
        println!(
            "{:>5} {:>10} {:>12.2} {:>7}",
            rank,
            format!("{:?}", t.triplet()),
            t.est_weight,
            t.dense
        );
    }
}

//! Sweeping the cut-off from 0 (hosts may take everything) to |T| (lanes
//! take everything) in eighths of the queue, as a rate table.
//!
//! Run: cargo run --release --example cutoff_sweep

use bbtc::bcsr::build_block_graph;
use bbtc::gen::gnp_edges;
use bbtc::graph::{canonicalize, degree_order, RawEdgeList};
use bbtc::partition::partition_symmetric;
use bbtc::scheduler::{run, SchedulerConfig};
use bbtc::tasking::{build_task_list, Estimator, DEFAULT_DENSE_THRESHOLD};

fn main() {
    let raw = RawEdgeList::from_edges(gnp_edges(2500, 0.015, 31));
    let g = degree_order(&canonicalize(&raw));
    let pv = partition_symmetric(&g, 8);
    let bg = build_block_graph(&g, &pv);
    let tl = build_task_list(&bg, Estimator::Bbtc, DEFAULT_DENSE_THRESHOLD);
    println!("m = {}, |T| = {}", g.edge_count(), tl.len());

    println!(
        "{:>8} {:>12} {:>12} {:>14}",
        "cutoff", "tau", "elapsed", "rate (e/s)"
    );
    let mut last_tau = None;
    for step in 0..=8usize {
        let cutoff = step * tl.len() / 8;
        let cfg = SchedulerConfig {
            n_host_workers: 2,
            n_fast_devices: 1,
            lanes_per_device: 4,
            cutoff_index: Some(cutoff),
            ..SchedulerConfig::default()
        };
        let report = run(&bg, &tl, &cfg);
        println!(
            "{:>8} {:>12} {:>11.4}s {:>14.3e}",
            cutoff, report.tau, report.elapsed_seconds, report.rate_edges_per_second
        );
        if let Some(prev) = last_tau {
            assert_eq!(prev, report.tau, "the answer never depends on the cutoff");
        }
        last_tau = Some(report.tau);
    }
}

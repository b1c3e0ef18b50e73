//! Prefetching under a simulated transfer model: how much copy time stays
//! hidden behind compute as the compute/transfer ratio changes.
//!
//! Run: cargo run --release --example transfer_overlap

use bbtc::bcsr::build_block_graph;
use bbtc::gen::gnp_edges;
use bbtc::graph::{canonicalize, degree_order, RawEdgeList};
use bbtc::partition::partition_symmetric;
use bbtc::scheduler::{run, SchedulerConfig, TransferModel};
use bbtc::tasking::{build_task_list, Estimator, DEFAULT_DENSE_THRESHOLD};

fn main() {
    let raw = RawEdgeList::from_edges(gnp_edges(1200, 0.15, 4));
    let g = degree_order(&canonicalize(&raw));
    let pv = partition_symmetric(&g, 8);
    let bg = build_block_graph(&g, &pv);
    let tl = build_task_list(&bg, Estimator::Bbtc, DEFAULT_DENSE_THRESHOLD);

    println!(
        "{:>12} {:>12} {:>12} {:>9}",
        "speed ratio", "total xfer", "exposed", "hidden %"
    );
    for fast_speedup in [1.0f64, 0.5, 0.1, 0.02] {
        let cfg = SchedulerConfig {
            n_host_workers: 0,
            n_fast_devices: 1,
            lanes_per_device: 2,
            cutoff_index: Some(tl.len()), // keep everything on the lanes
            transfer_model: TransferModel::Simulated {
                bytes_per_second: 80e6,
                latency_seconds: 100e-6,
            },
            fast_speedup,
        };
        let report = run(&bg, &tl, &cfg);
        let o = report.overlap;
        let hidden = if o.total_transfer_seconds > 0.0 {
            100.0 * (1.0 - o.exposed_transfer_seconds / o.total_transfer_seconds)
        } else {
            100.0
        };
        println!(
            "{:>12.2} {:>11.4}s {:>11.4}s {:>8.1}%",
            fast_speedup, o.total_transfer_seconds, o.exposed_transfer_seconds, hidden
        );
    }
    println!("(smaller speed ratio = slower lanes = more compute time to hide copies behind)");
}

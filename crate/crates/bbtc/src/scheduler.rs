//! Dual-ended execution of the ordered task queue across two worker
//! classes.
//!
//! Fast lanes (the accelerator streams) walk the heavy end of the queue in
//! a deterministic round-robin stripe up to the cut-off, prefetching the
//! next task's blocks into a per-device residency cache; past the cut-off
//! they compete for leftovers one claim at a time. Host workers pull from
//! the light end of the queue through an atomic cursor and never cross the
//! cut-off. Every task is claimed exactly once via a test-and-set flag, and
//! each worker accumulates its own count; the totals are summed once at the
//! end.
//!
//! Device transfers are modeled: a per-device copy engine serializes block
//! copies, each with a deadline computed from the transfer model, and a
//! lane may start computing only once all three of its blocks are resident.
//! With `TransferModel::None` copies complete instantly and the same
//! bookkeeping still runs, so event-log audits hold in both modes.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicI64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bcsr::BlockGraph;
use crate::kernels::{task_count_hash, task_count_list, ScratchMap};
use crate::partition::PartitionStats;
use crate::tasking::TaskList;

/// Cost model for moving a block onto a device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TransferModel {
    /// Copies are free and instantaneous.
    None,
    /// Each copy takes `latency_seconds + bytes / bytes_per_second`,
    /// serialized per device.
    Simulated {
        bytes_per_second: f64,
        latency_seconds: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchedulerConfig {
    pub n_host_workers: usize,
    pub n_fast_devices: usize,
    /// Streams per device; 4 by default.
    pub lanes_per_device: usize,
    /// Queue position separating lane-reserved from host-claimable tasks.
    /// `None` applies the default rule (half the queue, 0 without devices).
    pub cutoff_index: Option<usize>,
    pub transfer_model: TransferModel,
    /// Relative fast-lane/host speed to emulate. Realized by padding the
    /// slower class after each kernel (hosts when > 1, lanes when < 1), so
    /// all timestamps stay on one real clock.
    pub fast_speedup: f64,
}

impl Default for SchedulerConfig {
    fn default() -> Self {
        SchedulerConfig {
            n_host_workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            n_fast_devices: 0,
            lanes_per_device: 4,
            cutoff_index: None,
            transfer_model: TransferModel::None,
            fast_speedup: 1.0,
        }
    }
}

impl SchedulerConfig {
    /// A host-only configuration with `threads` workers.
    pub fn host_only(threads: usize) -> Self {
        SchedulerConfig {
            n_host_workers: threads,
            n_fast_devices: 0,
            ..SchedulerConfig::default()
        }
    }

    pub fn total_lanes(&self) -> usize {
        self.n_fast_devices * self.lanes_per_device
    }
}

/// Default cut-off position: the middle of the ordered queue.
pub fn default_cutoff(tl: &TaskList) -> usize {
    tl.len() / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WorkerKind {
    Host,
    Fast { device: usize, stream: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct WorkerSummary {
    pub worker: usize,
    pub kind: WorkerKind,
    pub tasks_executed: usize,
    pub busy_seconds: f64,
    pub tau: u64,
}

/// One executed task: who ran it, when, and what it counted.
#[derive(Debug, Clone, Serialize)]
pub struct TaskEvent {
    pub task: usize,
    pub worker: usize,
    pub start: f64,
    pub end: f64,
    pub count: u64,
    pub dense: bool,
}

/// One modeled block copy on a device's copy engine.
#[derive(Debug, Clone, Serialize)]
pub struct TransferEvent {
    pub device: usize,
    pub block: usize,
    pub requested: f64,
    pub start: f64,
    pub end: f64,
    pub bytes: u64,
}

/// An interval a lane spent blocked on residency before computing.
#[derive(Debug, Clone, Serialize)]
pub struct WaitEvent {
    pub worker: usize,
    pub device: usize,
    pub task: usize,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OverlapMetrics {
    /// Sum of all modeled copy durations.
    pub total_transfer_seconds: f64,
    /// Copy-engine busy time during which some lane of the same device sat
    /// blocked; never exceeds the total.
    pub exposed_transfer_seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tau: u64,
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub task_count: usize,
    /// Effective cut-off after the zero-device rule.
    pub cutoff: usize,
    pub elapsed_seconds: f64,
    /// Edges per second over the whole run.
    pub rate_edges_per_second: f64,
    pub partition: PartitionStats,
    pub workers: Vec<WorkerSummary>,
    pub task_events: Vec<TaskEvent>,
    pub transfers: Vec<TransferEvent>,
    pub waits: Vec<WaitEvent>,
    pub overlap: OverlapMetrics,
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

impl RunReport {
    /// Drops the per-event detail, keeping the summaries (bench output).
    pub fn without_events(mut self) -> RunReport {
        self.task_events.clear();
        self.transfers.clear();
        self.waits.clear();
        self
    }
}

/// Shared claim state: one test-and-set flag per task plus the descending
/// host cursor. Flags guarantee exactly-once execution; the cursor starts
/// at `|T|` and hosts stop once it drops below the cut-off.
struct TaskQueueState {
    claim_flags: Vec<AtomicBool>,
    host_cursor: AtomicI64,
    cutoff: usize,
}

impl TaskQueueState {
    fn new(len: usize, cutoff: usize) -> Self {
        TaskQueueState {
            claim_flags: (0..len).map(|_| AtomicBool::new(false)).collect(),
            host_cursor: AtomicI64::new(len as i64),
            cutoff,
        }
    }

    /// True when the caller wins the task.
    fn claim(&self, t: usize) -> bool {
        !self.claim_flags[t].swap(true, Ordering::AcqRel)
    }
}

struct DeviceState {
    resident: HashMap<usize, Instant>,
    engine_free: Instant,
    transfers: Vec<TransferEvent>,
}

/// Per-device block cache with a serializing copy engine. Blocks are never
/// evicted within a run.
struct DeviceResidency {
    devices: Vec<Mutex<DeviceState>>,
    model: TransferModel,
    run_start: Instant,
}

impl DeviceResidency {
    fn new(n_devices: usize, model: TransferModel, run_start: Instant) -> Self {
        DeviceResidency {
            devices: (0..n_devices)
                .map(|_| {
                    Mutex::new(DeviceState {
                        resident: HashMap::new(),
                        engine_free: run_start,
                        transfers: Vec::new(),
                    })
                })
                .collect(),
            model,
            run_start,
        }
    }

    fn copy_duration(&self, bytes: u64) -> Duration {
        match self.model {
            TransferModel::None => Duration::ZERO,
            TransferModel::Simulated {
                bytes_per_second,
                latency_seconds,
            } => Duration::from_secs_f64(latency_seconds + bytes as f64 / bytes_per_second),
        }
    }

    /// Queues copies for any of the task's blocks not already resident.
    fn request(&self, device: usize, bg: &BlockGraph, blocks: &[usize]) {
        let mut st = self.devices[device].lock().unwrap();
        let now = Instant::now();
        for (pos, &b) in blocks.iter().enumerate() {
            if blocks[..pos].contains(&b) || st.resident.contains_key(&b) {
                continue;
            }
            let bytes = bg.block_at(b).byte_size();
            let start = st.engine_free.max(now);
            let end = start + self.copy_duration(bytes);
            st.engine_free = end;
            st.resident.insert(b, end);
            let since = |i: Instant| i.duration_since(self.run_start).as_secs_f64();
            st.transfers.push(TransferEvent {
                device,
                block: b,
                requested: since(now),
                start: since(start),
                end: since(end),
                bytes,
            });
        }
    }

    /// Completion deadline over the task's blocks; they must be requested.
    fn deadline(&self, device: usize, blocks: &[usize]) -> Instant {
        let st = self.devices[device].lock().unwrap();
        blocks
            .iter()
            .map(|b| *st.resident.get(b).expect("block was never requested"))
            .max()
            .unwrap()
    }

    fn into_transfers(self) -> Vec<TransferEvent> {
        let mut all: Vec<TransferEvent> = self
            .devices
            .into_iter()
            .flat_map(|d| d.into_inner().unwrap().transfers)
            .collect();
        all.sort_by(|a, b| a.start.total_cmp(&b.start));
        all
    }
}

struct RunContext<'a> {
    bg: &'a BlockGraph,
    tl: &'a TaskList,
    queue: TaskQueueState,
    residency: DeviceResidency,
    cfg: &'a SchedulerConfig,
    run_start: Instant,
}

impl RunContext<'_> {
    fn task_blocks(&self, t: usize) -> [usize; 3] {
        let task = &self.tl.tasks()[t];
        [
            self.bg.block_index(task.i, task.j),
            self.bg.block_index(task.j, task.k),
            self.bg.block_index(task.i, task.k),
        ]
    }

    fn seconds_since_start(&self, i: Instant) -> f64 {
        i.duration_since(self.run_start).as_secs_f64()
    }

    /// Runs the task's kernel, applying the speed-emulation padding.
    fn execute(&self, t: usize, worker: usize, scratch: &mut ScratchMap, log: &mut WorkerLog) {
        let task = &self.tl.tasks()[t];
        let first = self.bg.block(task.i, task.j);
        let second = self.bg.block(task.j, task.k);
        let third = self.bg.block(task.i, task.k);

        let start = Instant::now();
        let count = if task.dense {
            task_count_hash(first, second, third, scratch)
        } else {
            task_count_list(first, second, third)
        };
        let kernel = start.elapsed();

        let is_fast = matches!(log.kind, WorkerKind::Fast { .. });
        let s = self.cfg.fast_speedup;
        let pad = if is_fast && s < 1.0 {
            kernel.mul_f64(1.0 / s - 1.0)
        } else if !is_fast && s > 1.0 {
            kernel.mul_f64(s - 1.0)
        } else {
            Duration::ZERO
        };
        if pad > Duration::ZERO {
            std::thread::sleep(pad);
        }
        let end = Instant::now();

        log.tau += count;
        log.busy += end - start;
        log.tasks.push(TaskEvent {
            task: t,
            worker,
            start: self.seconds_since_start(start),
            end: self.seconds_since_start(end),
            count,
            dense: task.dense,
        });
    }
}

struct WorkerLog {
    worker: usize,
    kind: WorkerKind,
    tau: u64,
    busy: Duration,
    tasks: Vec<TaskEvent>,
    waits: Vec<WaitEvent>,
}

impl WorkerLog {
    fn new(worker: usize, kind: WorkerKind) -> Self {
        WorkerLog {
            worker,
            kind,
            tau: 0,
            busy: Duration::ZERO,
            tasks: Vec::new(),
            waits: Vec::new(),
        }
    }
}

/// Executes every task exactly once and aggregates the per-worker counts.
///
/// `tl` must already be ordered. The answer is deterministic across any
/// worker/lane/cut-off configuration; only the timings vary.
pub fn run(bg: &BlockGraph, tl: &TaskList, cfg: &SchedulerConfig) -> RunReport {
    assert!(cfg.fast_speedup > 0.0, "fast_speedup must be positive");
    if let TransferModel::Simulated {
        bytes_per_second,
        latency_seconds,
    } = cfg.transfer_model
    {
        assert!(
            bytes_per_second > 0.0 && latency_seconds >= 0.0,
            "bad transfer model"
        );
    }
    let lanes = cfg.total_lanes();
    assert!(cfg.n_host_workers + lanes > 0, "need at least one worker");
    if cfg.n_fast_devices == 0 {
        assert!(cfg.n_host_workers > 0, "host-only run needs host workers");
    }

    // Without fast devices the whole queue belongs to the hosts.
    let cutoff = if lanes == 0 {
        0
    } else {
        cfg.cutoff_index
            .unwrap_or_else(|| default_cutoff(tl))
            .min(tl.len())
    };

    let run_start = Instant::now();
    let ctx = RunContext {
        bg,
        tl,
        queue: TaskQueueState::new(tl.len(), cutoff),
        residency: DeviceResidency::new(cfg.n_fast_devices, cfg.transfer_model, run_start),
        cfg,
        run_start,
    };

    let mut logs: Vec<WorkerLog> = Vec::with_capacity(lanes + cfg.n_host_workers);
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(lanes + cfg.n_host_workers);
        // Lanes are spawned stream-major: lane_id = stream * n_g + device.
        for stream in 0..cfg.lanes_per_device {
            for device in 0..cfg.n_fast_devices {
                let lane_id = stream * cfg.n_fast_devices + device;
                let ctx = &ctx;
                handles.push(scope.spawn(move || fast_lane_loop(ctx, lane_id)));
            }
        }
        for h in 0..cfg.n_host_workers {
            let worker_id = lanes + h;
            let ctx = &ctx;
            handles.push(scope.spawn(move || host_worker_loop(ctx, worker_id)));
        }
        for handle in handles {
            logs.push(handle.join().expect("worker panicked"));
        }
    });

    let elapsed = run_start.elapsed().as_secs_f64();
    finalize_report(bg, tl, cutoff, elapsed, logs, ctx.residency)
}

/// Fast-lane control flow: stride through the reserved prefix with prefetch,
/// then claim leftovers until one is contested.
fn fast_lane_loop(ctx: &RunContext<'_>, lane_id: usize) -> WorkerLog {
    let n_devices = ctx.cfg.n_fast_devices;
    let device = lane_id % n_devices;
    let stream = lane_id / n_devices;
    let stride = ctx.cfg.total_lanes();
    let total = ctx.tl.len();
    let mut scratch = ScratchMap::new(ctx.bg.max_part_len());
    let mut log = WorkerLog::new(lane_id, WorkerKind::Fast { device, stream });

    let mut t = lane_id;
    while t < ctx.queue.cutoff {
        ctx.residency.request(device, ctx.bg, &ctx.task_blocks(t));
        let next = t + stride;
        if next < total {
            // Overlap the next stripe member's copies with this compute.
            ctx.residency
                .request(device, ctx.bg, &ctx.task_blocks(next));
        }
        let claimed = ctx.queue.claim(t);
        debug_assert!(claimed, "pre-cutoff stripe must be uncontested");
        wait_for_residency(ctx, device, t, &mut log);
        ctx.execute(t, lane_id, &mut scratch, &mut log);
        t += stride;
    }

    // Copy blocks for the first competitive candidate. The claim below may
    // fail; the transfer is charged regardless.
    if t < total {
        ctx.residency.request(device, ctx.bg, &ctx.task_blocks(t));
    }

    while t < total {
        if !ctx.queue.claim(t) {
            // Hosts own everything from here on; this lane is done.
            break;
        }
        let next = t + stride;
        if next < total {
            ctx.residency
                .request(device, ctx.bg, &ctx.task_blocks(next));
        }
        wait_for_residency(ctx, device, t, &mut log);
        ctx.execute(t, lane_id, &mut scratch, &mut log);
        t += stride;
    }
    log
}

/// Blocks until all three blocks of task `t` are resident on `device`.
fn wait_for_residency(ctx: &RunContext<'_>, device: usize, t: usize, log: &mut WorkerLog) {
    let deadline = ctx.residency.deadline(device, &ctx.task_blocks(t));
    let mut now = Instant::now();
    if now >= deadline {
        return;
    }
    let wait_start = now;
    while now < deadline {
        std::thread::sleep(deadline - now);
        now = Instant::now();
    }
    log.waits.push(WaitEvent {
        worker: log.worker,
        device,
        task: t,
        start: ctx.seconds_since_start(wait_start),
        end: ctx.seconds_since_start(deadline),
    });
}

/// Host control flow: decrement the shared cursor from the queue tail,
/// claim-and-run anything unclaimed, stop at the cut-off.
fn host_worker_loop(ctx: &RunContext<'_>, worker_id: usize) -> WorkerLog {
    let mut scratch = ScratchMap::new(ctx.bg.max_part_len());
    let mut log = WorkerLog::new(worker_id, WorkerKind::Host);
    loop {
        let t = ctx.queue.host_cursor.fetch_sub(1, Ordering::AcqRel) - 1;
        if t < ctx.queue.cutoff as i64 {
            break;
        }
        let t = t as usize;
        if ctx.queue.claim(t) {
            ctx.execute(t, worker_id, &mut scratch, &mut log);
        }
    }
    log
}

fn finalize_report(
    bg: &BlockGraph,
    tl: &TaskList,
    cutoff: usize,
    elapsed: f64,
    logs: Vec<WorkerLog>,
    residency: DeviceResidency,
) -> RunReport {
    let mut tau = 0u64;
    let mut workers = Vec::with_capacity(logs.len());
    let mut task_events = Vec::with_capacity(tl.len());
    let mut waits = Vec::new();
    for log in logs {
        tau += log.tau;
        workers.push(WorkerSummary {
            worker: log.worker,
            kind: log.kind,
            tasks_executed: log.tasks.len(),
            busy_seconds: log.busy.as_secs_f64(),
            tau: log.tau,
        });
        task_events.extend(log.tasks);
        waits.extend(log.waits);
    }
    task_events.sort_by_key(|e| e.task);
    waits.sort_by(|a, b| a.start.total_cmp(&b.start));
    let transfers = residency.into_transfers();
    let overlap = overlap_metrics(&transfers, &waits);

    let m = bg.edge_count();
    RunReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tau,
        n: bg.vertex_count(),
        m,
        p: bg.part_count(),
        task_count: tl.len(),
        cutoff,
        elapsed_seconds: elapsed,
        rate_edges_per_second: if elapsed > 0.0 {
            m as f64 / elapsed
        } else {
            0.0
        },
        partition: bg.stats(),
        workers,
        task_events,
        transfers,
        waits,
        overlap,
    }
}

/// Exposed transfer time: per device, the copy-engine busy time that
/// coincides with some lane of that device blocking on residency. Bounded
/// above by the total copy time by construction.
fn overlap_metrics(transfers: &[TransferEvent], waits: &[WaitEvent]) -> OverlapMetrics {
    let total: f64 = transfers.iter().map(|t| t.end - t.start).sum();
    let devices: std::collections::BTreeSet<usize> = transfers.iter().map(|t| t.device).collect();
    let mut exposed = 0.0;
    for d in devices {
        let busy = merge_intervals(
            transfers
                .iter()
                .filter(|t| t.device == d)
                .map(|t| (t.start, t.end)),
        );
        let blocked = merge_intervals(
            waits
                .iter()
                .filter(|w| w.device == d)
                .map(|w| (w.start, w.end)),
        );
        exposed += intersection_measure(&busy, &blocked);
    }
    OverlapMetrics {
        total_transfer_seconds: total,
        exposed_transfer_seconds: exposed,
    }
}

fn merge_intervals(iter: impl Iterator<Item = (f64, f64)>) -> Vec<(f64, f64)> {
    let mut spans: Vec<(f64, f64)> = iter.filter(|(s, e)| e > s).collect();
    spans.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(spans.len());
    for (s, e) in spans {
        match merged.last_mut() {
            Some(last) if s <= last.1 => last.1 = last.1.max(e),
            _ => merged.push((s, e)),
        }
    }
    merged
}

fn intersection_measure(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let (mut i, mut j, mut total) = (0, 0, 0.0);
    while i < a.len() && j < b.len() {
        let lo = a[i].0.max(b[j].0);
        let hi = a[i].1.min(b[j].1);
        if hi > lo {
            total += hi - lo;
        }
        if a[i].1 < b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcsr::build_block_graph;
    use crate::kernels::tc_list;
    use crate::partition::partition_symmetric;
    use crate::tasking::{build_task_list, Estimator, DEFAULT_DENSE_THRESHOLD};
    use crate::testutil::{complete, gnp};

    fn pipeline(g: &crate::graph::GraphCsr, p: usize) -> (BlockGraph, TaskList) {
        let pv = partition_symmetric(g, p);
        let bg = build_block_graph(g, &pv);
        let tl = build_task_list(&bg, Estimator::Bbtc, DEFAULT_DENSE_THRESHOLD);
        (bg, tl)
    }

    #[test]
    fn single_host_matches_sequential_sum() {
        let g = gnp(80, 0.1, 14);
        let (bg, tl) = pipeline(&g, 4);
        let report = run(&bg, &tl, &SchedulerConfig::host_only(1));
        assert_eq!(report.tau, tc_list(&g));
        assert_eq!(report.cutoff, 0, "no devices forces cutoff 0");
        assert_eq!(report.task_events.len(), tl.len());
    }

    #[test]
    fn complete_graph_with_devices() {
        let g = complete(5);
        let (bg, tl) = pipeline(&g, 2);
        let cfg = SchedulerConfig {
            n_host_workers: 2,
            n_fast_devices: 1,
            lanes_per_device: 4,
            ..SchedulerConfig::default()
        };
        let report = run(&bg, &tl, &cfg);
        assert_eq!(report.tau, 10);
    }

    #[test]
    fn tau_identical_across_configurations() {
        let g = gnp(120, 0.1, 99);
        let (bg, tl) = pipeline(&g, 5);
        let want = tc_list(&g);
        for hosts in [1, 2, 4] {
            for devices in [0, 1, 2] {
                for cutoff in [0, tl.len() / 2, tl.len()] {
                    if devices == 0 && hosts == 0 {
                        continue;
                    }
                    let cfg = SchedulerConfig {
                        n_host_workers: hosts,
                        n_fast_devices: devices,
                        lanes_per_device: 2,
                        cutoff_index: Some(cutoff),
                        ..SchedulerConfig::default()
                    };
                    let report = run(&bg, &tl, &cfg);
                    assert_eq!(
                        report.tau, want,
                        "hosts={hosts} devices={devices} cutoff={cutoff}"
                    );
                }
            }
        }
    }

    #[test]
    fn exactly_once_and_cutoff_barrier() {
        let g = gnp(100, 0.12, 7);
        let (bg, tl) = pipeline(&g, 4);
        let cfg = SchedulerConfig {
            n_host_workers: 3,
            n_fast_devices: 2,
            lanes_per_device: 2,
            cutoff_index: None,
            ..SchedulerConfig::default()
        };
        let report = run(&bg, &tl, &cfg);
        assert_eq!(report.cutoff, tl.len() / 2);

        let mut seen = vec![0usize; tl.len()];
        for e in &report.task_events {
            seen[e.task] += 1;
        }
        assert!(seen.iter().all(|&c| c == 1), "each task exactly once");

        let lanes = cfg.total_lanes();
        for e in &report.task_events {
            if e.task < report.cutoff {
                assert!(
                    e.worker < lanes,
                    "task {} below cutoff ran on a host",
                    e.task
                );
            }
        }
    }

    #[test]
    fn stripe_assignment_below_cutoff() {
        let g = gnp(90, 0.15, 21);
        let (bg, tl) = pipeline(&g, 4);
        assert!(tl.len() >= 8);
        let cfg = SchedulerConfig {
            n_host_workers: 0,
            n_fast_devices: 1,
            lanes_per_device: 4,
            cutoff_index: Some(8),
            ..SchedulerConfig::default()
        };
        let report = run(&bg, &tl, &cfg);
        for e in &report.task_events {
            if e.task < 8 {
                assert_eq!(e.worker, e.task % 4, "stripe: lane L owns tasks L, L+4");
            }
        }
    }

    #[test]
    fn cutoff_at_queue_end_starves_hosts() {
        let g = gnp(60, 0.2, 5);
        let (bg, tl) = pipeline(&g, 3);
        let cfg = SchedulerConfig {
            n_host_workers: 4,
            n_fast_devices: 1,
            lanes_per_device: 2,
            cutoff_index: Some(tl.len()),
            ..SchedulerConfig::default()
        };
        let report = run(&bg, &tl, &cfg);
        let lanes = cfg.total_lanes();
        for w in &report.workers {
            if w.worker >= lanes {
                assert_eq!(w.tasks_executed, 0);
            }
        }
        assert_eq!(report.tau, tc_list(&g));
    }

    #[test]
    fn default_cutoff_rule() {
        let g = gnp(40, 0.3, 2);
        let pv = partition_symmetric(&g, 3);
        let bg = build_block_graph(&g, &pv);
        let tl = build_task_list(&bg, Estimator::Bbtc, DEFAULT_DENSE_THRESHOLD);
        assert_eq!(tl.len(), 10);
        assert_eq!(default_cutoff(&tl), 5);

        let single = pipeline(&complete(3), 1).1;
        assert_eq!(single.len(), 1);
        assert_eq!(default_cutoff(&single), 0);
    }

    #[test]
    fn residency_precedes_compute_under_simulated_transfers() {
        let g = gnp(100, 0.15, 31);
        let (bg, tl) = pipeline(&g, 4);
        let cfg = SchedulerConfig {
            n_host_workers: 2,
            n_fast_devices: 2,
            lanes_per_device: 2,
            cutoff_index: None,
            transfer_model: TransferModel::Simulated {
                bytes_per_second: 200e6,
                latency_seconds: 20e-6,
            },
            ..SchedulerConfig::default()
        };
        let report = run(&bg, &tl, &cfg);
        assert_eq!(report.tau, tc_list(&g));
        audit_residency(&report, &bg, &tl, cfg.total_lanes(), cfg.n_fast_devices);
        assert!(report.overlap.exposed_transfer_seconds >= 0.0);
        assert!(
            report.overlap.exposed_transfer_seconds
                <= report.overlap.total_transfer_seconds + 1e-12
        );
    }

    /// Every fast-lane compute start must be at or after the residency
    /// completion of all three of its blocks.
    fn audit_residency(
        report: &RunReport,
        bg: &BlockGraph,
        tl: &TaskList,
        lanes: usize,
        n_devices: usize,
    ) {
        let mut done: HashMap<(usize, usize), f64> = HashMap::new();
        for tr in &report.transfers {
            done.insert((tr.device, tr.block), tr.end);
        }
        for e in &report.task_events {
            if e.worker >= lanes {
                continue;
            }
            let device = e.worker % n_devices;
            let task = &tl.tasks()[e.task];
            for b in [
                bg.block_index(task.i, task.j),
                bg.block_index(task.j, task.k),
                bg.block_index(task.i, task.k),
            ] {
                let finished = done
                    .get(&(device, b))
                    .expect("computed on a block that was never copied");
                assert!(
                    e.start >= *finished,
                    "task {} started at {} before block {} finished at {}",
                    e.task,
                    e.start,
                    b,
                    finished
                );
            }
        }
    }

    #[test]
    fn exposed_fraction_shrinks_as_compute_grows() {
        let g = gnp(400, 0.15, 77);
        let (bg, tl) = pipeline(&g, 4);
        let base = SchedulerConfig {
            n_host_workers: 0,
            n_fast_devices: 1,
            lanes_per_device: 4,
            cutoff_index: Some(tl.len()),
            transfer_model: TransferModel::Simulated {
                bytes_per_second: 50e6,
                latency_seconds: 100e-6,
            },
            fast_speedup: 1.0,
        };
        let fast_compute = run(&bg, &tl, &base);
        let slow = SchedulerConfig {
            fast_speedup: 0.02,
            ..base.clone()
        };
        let slow_compute = run(&bg, &tl, &slow);
        assert_eq!(fast_compute.tau, slow_compute.tau);

        let frac = |r: &RunReport| {
            if r.overlap.total_transfer_seconds == 0.0 {
                0.0
            } else {
                r.overlap.exposed_transfer_seconds / r.overlap.total_transfer_seconds
            }
        };
        assert!(
            frac(&slow_compute) <= frac(&fast_compute) + 1e-9,
            "more compute should hide more transfer: slow {} vs fast {}",
            frac(&slow_compute),
            frac(&fast_compute)
        );
    }
}

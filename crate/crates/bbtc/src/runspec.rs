//! End-to-end pipeline drivers behind the command-line front end.
//!
//! Everything here is plain library code returning serializable reports, so
//! the binary stays a thin flag parser and the same entry points are usable
//! from tests and examples.

use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::bcsr::{build_block_graph, BlockGraph};
use crate::gen::{gnp_edges, rmat_edges, RmatProbs};
use crate::graph::{canonicalize, degree_order, GraphCsr};
use crate::io::{load_edge_list, write_edge_list, InputFormat, LoadError};
use crate::kernels::{tc_hash, tc_latapy, tc_list, LatapyConfig, ScratchMap};
use crate::oracle::brute_force_bounded;
use crate::partition::{
    auto_parts, partition_stats, partition_symmetric, PartitionStats, PartitionVector,
};
use crate::scheduler::{run, RunReport, SchedulerConfig, REPORT_SCHEMA_VERSION};
use crate::tasking::{
    build_task_list, coverage_table, fraction_of_true_top_in_prefix, CoverageRow, Estimator,
    TaskList,
};

#[derive(Debug)]
pub enum CmdError {
    Load(LoadError),
    Io(io::Error),
    Config(String),
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmdError::Load(e) => write!(f, "{e}"),
            CmdError::Io(e) => write!(f, "{e}"),
            CmdError::Config(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CmdError {}

impl From<LoadError> for CmdError {
    fn from(e: LoadError) -> Self {
        CmdError::Load(e)
    }
}

impl From<io::Error> for CmdError {
    fn from(e: io::Error) -> Self {
        CmdError::Io(e)
    }
}

/// A fully resolved run request; serialized into every report so runs are
/// reproducible from their own output.
#[derive(Debug, Clone, Serialize)]
pub struct RunSpec {
    pub input: PathBuf,
    pub format: InputFormat,
    /// Requested part count; `None` resolves to the average-degree rule.
    pub p: Option<usize>,
    pub estimator: Estimator,
    pub dense_threshold: f64,
    pub scheduler: SchedulerConfig,
    pub seed: u64,
}

/// Sequential baseline selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Baseline {
    List,
    Hash,
    Latapy(u64),
    Brute,
}

impl std::str::FromStr for Baseline {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "list" => Ok(Baseline::List),
            "hash" => Ok(Baseline::Hash),
            "brute" => Ok(Baseline::Brute),
            "latapy" => Ok(Baseline::Latapy(LatapyConfig::default().k_threshold)),
            other => {
                if let Some(k) = other.strip_prefix("latapy:") {
                    let k = k
                        .parse::<u64>()
                        .map_err(|_| format!("bad latapy threshold {k:?}"))?;
                    Ok(Baseline::Latapy(k))
                } else {
                    Err(format!(
                        "unknown baseline {other:?} (expected list|hash|latapy:K|brute)"
                    ))
                }
            }
        }
    }
}

impl fmt::Display for Baseline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Baseline::List => f.write_str("list"),
            Baseline::Hash => f.write_str("hash"),
            Baseline::Latapy(k) => write!(f, "latapy:{k}"),
            Baseline::Brute => f.write_str("brute"),
        }
    }
}

/// Loads, canonicalizes, and degree-orders the input graph.
pub fn prepare_graph(input: &Path, format: InputFormat) -> Result<GraphCsr, CmdError> {
    let raw = load_edge_list(input, format)?;
    Ok(degree_order(&canonicalize(&raw)))
}

fn check_workers(cfg: &SchedulerConfig) -> Result<(), CmdError> {
    if cfg.n_host_workers == 0 && cfg.total_lanes() == 0 {
        return Err(CmdError::Config(
            "configuration has no workers: need hosts or devices with lanes".into(),
        ));
    }
    if cfg.n_fast_devices == 0 && cfg.n_host_workers == 0 {
        return Err(CmdError::Config(
            "host-only run needs at least one host".into(),
        ));
    }
    Ok(())
}

/// Applies the `BBTC_THREADS` environment cap to a host worker count.
pub fn host_workers_with_env_cap(requested: usize) -> usize {
    match std::env::var("BBTC_THREADS") {
        Ok(v) => match v.parse::<usize>() {
            Ok(cap) => requested.min(cap),
            Err(_) => requested,
        },
        Err(_) => requested,
    }
}

/// Resolves the part count and flags a clamp warning if the request
/// exceeded the vertex count.
fn resolve_p(g: &GraphCsr, requested: Option<usize>, warnings: &mut Vec<String>) -> usize {
    match requested {
        None => auto_parts(g),
        Some(p) => {
            let effective = p.min(g.vertex_count()).max(1);
            if effective != p {
                warnings.push(format!(
                    "requested p = {p} clamped to {effective} (n = {})",
                    g.vertex_count()
                ));
            }
            effective
        }
    }
}

fn prepare_pipeline(
    g: &GraphCsr,
    spec: &RunSpec,
    warnings: &mut Vec<String>,
) -> (PartitionVector, BlockGraph, TaskList) {
    let p = resolve_p(g, spec.p, warnings);
    let pv = partition_symmetric(g, p);
    let bg = build_block_graph(g, &pv);
    let tl = build_task_list(&bg, spec.estimator, spec.dense_threshold);
    (pv, bg, tl)
}

#[derive(Debug, Serialize)]
pub struct CountReport {
    pub schema_version: u32,
    pub spec: RunSpec,
    pub resolved_p: usize,
    pub warnings: Vec<String>,
    pub report: RunReport,
}

/// The full pipeline: ingest, order, partition, block, compose, schedule.
pub fn cmd_count(spec: &RunSpec) -> Result<CountReport, CmdError> {
    check_workers(&spec.scheduler)?;
    let g = prepare_graph(&spec.input, spec.format)?;
    let mut warnings = Vec::new();
    let (_, bg, tl) = prepare_pipeline(&g, spec, &mut warnings);
    let report = run(&bg, &tl, &spec.scheduler);
    Ok(CountReport {
        schema_version: REPORT_SCHEMA_VERSION,
        spec: spec.clone(),
        resolved_p: bg.part_count(),
        warnings,
        report,
    })
}

#[derive(Debug, Serialize)]
pub struct BaselineReport {
    pub schema_version: u32,
    pub input: PathBuf,
    pub method: String,
    pub n: usize,
    pub m: usize,
    pub tau: u64,
    pub elapsed_seconds: f64,
    pub rate_edges_per_second: f64,
}

/// Runs one sequential baseline instead of the scheduler.
pub fn cmd_baseline(
    input: &Path,
    format: InputFormat,
    baseline: Baseline,
    oracle_bound: usize,
) -> Result<BaselineReport, CmdError> {
    let g = prepare_graph(input, format)?;
    let start = std::time::Instant::now();
    let tau = match baseline {
        Baseline::List => tc_list(&g),
        Baseline::Hash => tc_hash(&g, &mut ScratchMap::new(g.vertex_count())),
        Baseline::Latapy(k) => tc_latapy(&g, LatapyConfig::new(k)),
        Baseline::Brute => {
            if g.vertex_count() > oracle_bound {
                return Err(CmdError::Config(format!(
                    "brute baseline limited to {oracle_bound} vertices, graph has {}",
                    g.vertex_count()
                )));
            }
            brute_force_bounded(&g, oracle_bound)
        }
    };
    let elapsed = start.elapsed().as_secs_f64();
    Ok(BaselineReport {
        schema_version: REPORT_SCHEMA_VERSION,
        input: input.to_path_buf(),
        method: baseline.to_string(),
        n: g.vertex_count(),
        m: g.edge_count(),
        tau,
        elapsed_seconds: elapsed,
        rate_edges_per_second: if elapsed > 0.0 {
            g.edge_count() as f64 / elapsed
        } else {
            0.0
        },
    })
}

#[derive(Debug, Serialize)]
pub struct MethodCount {
    pub method: String,
    pub tau: u64,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub input: PathBuf,
    pub n: usize,
    pub m: usize,
    pub counts: Vec<MethodCount>,
    pub ok: bool,
    pub first_mismatch: Option<(String, u64, String, u64)>,
}

pub const VERIFY_P_GRID: [usize; 5] = [1, 2, 4, 8, 16];
pub const VERIFY_LATAPY_KS: [u64; 4] = [0, 2, 32, u64::MAX];

/// Cross-checks every counting route against the brute-force oracle:
/// the three sequential kernels, the Latapy hybrid over a K grid, and the
/// block pipeline over a p grid.
pub fn cmd_verify(
    input: &Path,
    format: InputFormat,
    oracle_bound: usize,
) -> Result<VerifyReport, CmdError> {
    let g = prepare_graph(input, format)?;
    if g.vertex_count() > oracle_bound {
        return Err(CmdError::Config(format!(
            "verify is limited to {oracle_bound} vertices, graph has {}",
            g.vertex_count()
        )));
    }

    let mut counts = vec![MethodCount {
        method: "brute".into(),
        tau: brute_force_bounded(&g, oracle_bound),
    }];
    counts.push(MethodCount {
        method: "list".into(),
        tau: tc_list(&g),
    });
    counts.push(MethodCount {
        method: "hash".into(),
        tau: tc_hash(&g, &mut ScratchMap::new(g.vertex_count())),
    });
    for k in VERIFY_LATAPY_KS {
        let label = if k == u64::MAX {
            "latapy:inf".to_string()
        } else {
            format!("latapy:{k}")
        };
        counts.push(MethodCount {
            method: label,
            tau: tc_latapy(&g, LatapyConfig::new(k)),
        });
    }
    for p in VERIFY_P_GRID {
        let pv = partition_symmetric(&g, p);
        let bg = build_block_graph(&g, &pv);
        let tl = build_task_list(
            &bg,
            Estimator::Bbtc,
            crate::tasking::DEFAULT_DENSE_THRESHOLD,
        );
        let report = run(&bg, &tl, &SchedulerConfig::host_only(2));
        counts.push(MethodCount {
            method: format!("bbtc:p={}", bg.part_count()),
            tau: report.tau,
        });
    }

    let first = counts[0].tau;
    let mismatch = counts
        .iter()
        .find(|c| c.tau != first)
        .map(|c| (counts[0].method.clone(), first, c.method.clone(), c.tau));
    Ok(VerifyReport {
        schema_version: REPORT_SCHEMA_VERSION,
        input: input.to_path_buf(),
        n: g.vertex_count(),
        m: g.edge_count(),
        ok: mismatch.is_none(),
        first_mismatch: mismatch,
        counts,
    })
}

#[derive(Debug, Serialize)]
pub struct PartitionReport {
    pub schema_version: u32,
    pub input: PathBuf,
    pub resolved_p: usize,
    pub warnings: Vec<String>,
    pub cuts: Vec<usize>,
    pub stats: PartitionStats,
}

/// Partitions the graph and reports cuts plus balance statistics.
pub fn cmd_partition(
    input: &Path,
    format: InputFormat,
    p: Option<usize>,
) -> Result<PartitionReport, CmdError> {
    let g = prepare_graph(input, format)?;
    let mut warnings = Vec::new();
    let p = resolve_p(&g, p, &mut warnings);
    let pv = partition_symmetric(&g, p);
    let stats = partition_stats(&g, &pv);
    Ok(PartitionReport {
        schema_version: REPORT_SCHEMA_VERSION,
        input: input.to_path_buf(),
        resolved_p: pv.part_count(),
        warnings,
        cuts: pv.cuts().to_vec(),
        stats,
    })
}

#[derive(Debug, Serialize)]
pub struct TasksReport {
    pub schema_version: u32,
    pub input: PathBuf,
    pub resolved_p: usize,
    pub estimator: Estimator,
    pub dense_threshold: f64,
    pub warnings: Vec<String>,
    pub tasks: Vec<crate::tasking::Task>,
}

impl TasksReport {
    /// CSV rendering: one task per line in queue order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,i,j,k,est_weight,dense\n");
        for (idx, t) in self.tasks.iter().enumerate() {
            out.push_str(&format!(
                "{idx},{},{},{},{},{}\n",
                t.i, t.j, t.k, t.est_weight, t.dense
            ));
        }
        out
    }
}

/// Dumps the ordered task queue with weights and classifications.
pub fn cmd_tasks(
    input: &Path,
    format: InputFormat,
    p: Option<usize>,
    estimator: Estimator,
    dense_threshold: f64,
) -> Result<TasksReport, CmdError> {
    let g = prepare_graph(input, format)?;
    let mut warnings = Vec::new();
    let p = resolve_p(&g, p, &mut warnings);
    let pv = partition_symmetric(&g, p);
    let bg = build_block_graph(&g, &pv);
    let tl = build_task_list(&bg, estimator, dense_threshold);
    Ok(TasksReport {
        schema_version: REPORT_SCHEMA_VERSION,
        input: input.to_path_buf(),
        resolved_p: bg.part_count(),
        estimator,
        dense_threshold,
        warnings,
        tasks: tl.tasks().to_vec(),
    })
}

#[derive(Debug, Serialize)]
pub struct EstimatorStudy {
    pub estimator: Estimator,
    pub coverage: Vec<CoverageRow>,
    /// Fraction of the true top-16 heaviest tasks inside the estimator's
    /// top 10% of the queue.
    pub top16_in_top_decile: f64,
}

#[derive(Debug, Serialize)]
pub struct SweepCell {
    pub cutoff: usize,
    pub tau: u64,
    pub elapsed_seconds: f64,
    pub rate_edges_per_second: f64,
}

#[derive(Debug, Serialize)]
pub struct ScaleCell {
    pub hosts: usize,
    pub devices: usize,
    pub tau: u64,
    pub elapsed_seconds: f64,
    pub rate_edges_per_second: f64,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub spec: RunSpec,
    pub resolved_p: usize,
    pub warnings: Vec<String>,
    pub estimator_study: Vec<EstimatorStudy>,
    pub cutoff_sweep: Vec<SweepCell>,
    pub worker_scaling: Vec<ScaleCell>,
}

/// Bench harness: estimator quality study, a 9-point cut-off sweep in
/// eighths of the queue, and host-count scaling.
pub fn cmd_bench(spec: &RunSpec) -> Result<BenchReport, CmdError> {
    check_workers(&spec.scheduler)?;
    let g = prepare_graph(&spec.input, spec.format)?;
    let mut warnings = Vec::new();
    let (_, bg, _) = prepare_pipeline(&g, spec, &mut warnings);

    let mut estimator_study = Vec::new();
    for estimator in Estimator::ALL {
        let ordered = build_task_list(&bg, estimator, spec.dense_threshold);
        let xs: Vec<usize> = [1, 2, 4, 8, 16, 32]
            .into_iter()
            .filter(|&x| x <= ordered.len())
            .collect();
        let coverage = coverage_table(&bg, &ordered, &xs);
        let decile = (ordered.len() as f64 * 0.10).ceil() as usize;
        let top16 = fraction_of_true_top_in_prefix(&bg, &ordered, 16.min(ordered.len()), decile);
        estimator_study.push(EstimatorStudy {
            estimator,
            coverage,
            top16_in_top_decile: top16,
        });
    }

    let tl = build_task_list(&bg, spec.estimator, spec.dense_threshold);
    let mut cutoff_sweep = Vec::new();
    for step in 0..=8usize {
        let cutoff = step * tl.len() / 8;
        let cfg = SchedulerConfig {
            cutoff_index: Some(cutoff),
            ..spec.scheduler.clone()
        };
        let report = run(&bg, &tl, &cfg).without_events();
        cutoff_sweep.push(SweepCell {
            cutoff,
            tau: report.tau,
            elapsed_seconds: report.elapsed_seconds,
            rate_edges_per_second: report.rate_edges_per_second,
        });
    }

    let mut worker_scaling = Vec::new();
    let mut hosts = 1usize;
    while hosts <= spec.scheduler.n_host_workers.max(1) {
        let cfg = SchedulerConfig {
            n_host_workers: hosts,
            ..spec.scheduler.clone()
        };
        let report = run(&bg, &tl, &cfg).without_events();
        worker_scaling.push(ScaleCell {
            hosts,
            devices: cfg.n_fast_devices,
            tau: report.tau,
            elapsed_seconds: report.elapsed_seconds,
            rate_edges_per_second: report.rate_edges_per_second,
        });
        hosts *= 2;
    }

    Ok(BenchReport {
        schema_version: REPORT_SCHEMA_VERSION,
        spec: spec.clone(),
        resolved_p: bg.part_count(),
        warnings,
        estimator_study,
        cutoff_sweep,
        worker_scaling,
    })
}

/// Synthetic graph kind for [`cmd_gen`].
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GenKind {
    Gnp { n: usize, q: f64 },
    Rmat { scale: u32, edge_factor: usize },
}

#[derive(Debug, Serialize)]
pub struct GenReport {
    pub schema_version: u32,
    pub out: PathBuf,
    pub kind: GenKind,
    pub seed: u64,
    pub pairs_written: usize,
}

/// Writes a deterministic synthetic graph as edge-list text.
pub fn cmd_gen(kind: GenKind, seed: u64, out: &Path) -> Result<GenReport, CmdError> {
    let edges = match kind {
        GenKind::Gnp { n, q } => gnp_edges(n, q, seed),
        GenKind::Rmat { scale, edge_factor } => {
            rmat_edges(scale, edge_factor, RmatProbs::default(), seed)
        }
    };
    write_edge_list(out, &edges)?;
    Ok(GenReport {
        schema_version: REPORT_SCHEMA_VERSION,
        out: out.to_path_buf(),
        kind,
        seed,
        pairs_written: edges.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn temp_file(name: &str, contents: &str) -> PathBuf {
        let dir = std::env::temp_dir().join("bbtc-runspec-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    fn k5_file() -> PathBuf {
        let mut text = String::new();
        for u in 0..5 {
            for v in u + 1..5 {
                text.push_str(&format!("{u} {v}\n"));
            }
        }
        temp_file("k5.txt", &text)
    }

    fn spec_for(input: PathBuf) -> RunSpec {
        RunSpec {
            input,
            format: InputFormat::EdgeList,
            p: Some(2),
            estimator: Estimator::Bbtc,
            dense_threshold: 4.0,
            scheduler: SchedulerConfig::host_only(2),
            seed: 0,
        }
    }

    #[test]
    fn count_k5_is_ten() {
        let report = cmd_count(&spec_for(k5_file())).unwrap();
        assert_eq!(report.report.tau, 10);
        assert_eq!(report.resolved_p, 2);
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn count_clamps_oversized_p() {
        let mut spec = spec_for(k5_file());
        spec.p = Some(50);
        let report = cmd_count(&spec).unwrap();
        assert_eq!(report.resolved_p, 5);
        assert_eq!(report.warnings.len(), 1);
        assert_eq!(report.report.tau, 10);
    }

    #[test]
    fn verify_accepts_consistent_graph() {
        let report = cmd_verify(&k5_file(), InputFormat::EdgeList, 500).unwrap();
        assert!(report.ok, "mismatch: {:?}", report.first_mismatch);
        assert!(report.counts.iter().all(|c| c.tau == 10));
        // brute, list, hash, 4 latapy Ks, 5 p values
        assert_eq!(report.counts.len(), 12);
    }

    #[test]
    fn verify_rejects_oversized_graph() {
        let err = cmd_verify(&k5_file(), InputFormat::EdgeList, 3).unwrap_err();
        assert!(matches!(err, CmdError::Config(_)));
    }

    #[test]
    fn baseline_reports_match() {
        let path = k5_file();
        for baseline in ["list", "hash", "latapy:2", "brute"] {
            let b: Baseline = baseline.parse().unwrap();
            let report = cmd_baseline(&path, InputFormat::EdgeList, b, 500).unwrap();
            assert_eq!(report.tau, 10, "{baseline}");
        }
    }

    #[test]
    fn bench_has_nine_sweep_points_and_constant_tau() {
        let spec = spec_for(k5_file());
        let report = cmd_bench(&spec).unwrap();
        assert_eq!(report.cutoff_sweep.len(), 9);
        let taus: std::collections::HashSet<u64> =
            report.cutoff_sweep.iter().map(|c| c.tau).collect();
        assert_eq!(taus.len(), 1);
        assert!(taus.contains(&10));
        assert_eq!(report.estimator_study.len(), 4);
    }

    #[test]
    fn gen_writes_deterministic_files() {
        let dir = std::env::temp_dir().join("bbtc-runspec-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let out1 = dir.join("g1.txt");
        let out2 = dir.join("g2.txt");
        cmd_gen(GenKind::Gnp { n: 50, q: 0.2 }, 7, &out1).unwrap();
        cmd_gen(GenKind::Gnp { n: 50, q: 0.2 }, 7, &out2).unwrap();
        assert_eq!(std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());

        let empty = dir.join("empty.txt");
        let report = cmd_gen(GenKind::Gnp { n: 0, q: 0.5 }, 1, &empty).unwrap();
        assert_eq!(report.pairs_written, 0);
        assert_eq!(std::fs::read(&empty).unwrap().len(), 0);
    }

    #[test]
    fn partition_and_tasks_reports() {
        let path = k5_file();
        let part = cmd_partition(&path, InputFormat::EdgeList, Some(2)).unwrap();
        assert_eq!(part.cuts.first(), Some(&0));
        assert_eq!(part.cuts.last(), Some(&5));
        assert!(part.stats.lambda >= 1.0);

        let tasks = cmd_tasks(&path, InputFormat::EdgeList, Some(2), Estimator::Bbtc, 4.0).unwrap();
        assert_eq!(tasks.tasks.len(), 4);
        let csv = tasks.to_csv();
        assert!(csv.starts_with("index,i,j,k,est_weight,dense\n"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn env_cap_limits_host_workers() {
        // Serial by nature: touches process-global env state once.
        std::env::set_var("BBTC_THREADS", "3");
        assert_eq!(host_workers_with_env_cap(8), 3);
        assert_eq!(host_workers_with_env_cap(2), 2);
        std::env::remove_var("BBTC_THREADS");
        assert_eq!(host_workers_with_env_cap(8), 8);
    }

    #[test]
    fn mismatching_matrix_market_is_a_load_error() {
        let path = temp_file(
            "bad.mtx",
            "%%MatrixMarket matrix coordinate pattern symmetric\n",
        );
        let err = cmd_count(&RunSpec {
            input: path,
            format: InputFormat::MatrixMarket,
            ..spec_for(k5_file())
        })
        .unwrap_err();
        assert!(matches!(err, CmdError::Load(_)));
    }
}

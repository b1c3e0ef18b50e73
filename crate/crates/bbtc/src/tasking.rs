//! Task composition over block triplets, workload estimation, dense/sparse
//! classification, and execution-queue ordering.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bcsr::BlockGraph;
use crate::kernels::task_count_list_ops;

/// One unit of work: count the triangles spanning blocks
/// `(i,j), (j,k), (i,k)` with `i <= j <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Task {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Nonnegative workload estimate used for queue ordering.
    pub est_weight: f64,
    /// Kernel selector: hashmap when dense, merge otherwise.
    pub dense: bool,
}

impl Task {
    pub fn triplet(&self) -> (usize, usize, usize) {
        (self.i, self.j, self.k)
    }
}

/// The task queue; `len() == p(p+1)(p+2)/6` always.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskList {
    tasks: Vec<Task>,
    p: usize,
}

impl TaskList {
    pub fn tasks(&self) -> &[Task] {
        &self.tasks
    }

    /// Mutable task access for custom weighting schemes; pair with
    /// [`order_tasks`] afterwards.
    pub fn tasks_mut(&mut self) -> &mut [Task] {
        &mut self.tasks
    }

    pub fn len(&self) -> usize {
        self.tasks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tasks.is_empty()
    }

    pub fn part_count(&self) -> usize {
        self.p
    }

    /// The closed-form task count for `p` parts.
    pub fn expected_len(p: usize) -> usize {
        p * (p + 1) * (p + 2) / 6
    }
}

/// Workload estimation function for a task.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Estimator {
    /// `nnz(G_{i,j}) * max(δ(G_{i,k}), δ(G_{j,k}))`.
    Bbtc,
    /// Total nonzeros across the three blocks.
    Nnz,
    /// Sum of per-block nonzeros-per-cell.
    Density,
    /// Sum of the three block average degrees.
    Degree,
}

impl Estimator {
    pub const ALL: [Estimator; 4] = [
        Estimator::Bbtc,
        Estimator::Nnz,
        Estimator::Density,
        Estimator::Degree,
    ];
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Estimator::Bbtc => "bbtc",
            Estimator::Nnz => "nnz",
            Estimator::Density => "density",
            Estimator::Degree => "degree",
        };
        f.write_str(name)
    }
}

impl FromStr for Estimator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bbtc" => Ok(Estimator::Bbtc),
            "nnz" => Ok(Estimator::Nnz),
            "density" => Ok(Estimator::Density),
            "degree" => Ok(Estimator::Degree),
            other => Err(format!(
                "unknown estimator {other:?} (expected bbtc|nnz|density|degree)"
            )),
        }
    }
}

/// Default density threshold for the dense/sparse kernel selector.
pub const DEFAULT_DENSE_THRESHOLD: f64 = 4.0;

/// Emits exactly one task per triplet `i <= j <= k`, in ascending loop
/// order. Weights start at zero and every task starts sparse; see
/// [`estimate_weight`], [`classify_dense`], and [`order_tasks`].
pub fn compose_tasks(bg: &BlockGraph) -> TaskList {
    let p = bg.part_count();
    let mut tasks = Vec::with_capacity(TaskList::expected_len(p));
    for i in 0..p {
        for j in i..p {
            for k in j..p {
                tasks.push(Task {
                    i,
                    j,
                    k,
                    est_weight: 0.0,
                    dense: false,
                });
            }
        }
    }
    TaskList { tasks, p }
}

/// Estimated workload of `t` under the chosen estimator.
pub fn estimate_weight(bg: &BlockGraph, t: &Task, estimator: Estimator) -> f64 {
    let first = bg.block(t.i, t.j);
    let second = bg.block(t.j, t.k);
    let third = bg.block(t.i, t.k);
    match estimator {
        Estimator::Bbtc => first.nnz() as f64 * third.avg_degree().max(second.avg_degree()),
        Estimator::Nnz => (first.nnz() + second.nnz() + third.nnz()) as f64,
        Estimator::Density => [first, second, third]
            .iter()
            .map(|b| {
                let area = b.src_count() as f64 * b.dst_count() as f64;
                if area == 0.0 {
                    0.0
                } else {
                    b.nnz() as f64 / area
                }
            })
            .sum(),
        Estimator::Degree => first.avg_degree() + second.avg_degree() + third.avg_degree(),
    }
}

/// A task is dense when either destination block has average partial degree
/// at or above `threshold`.
pub fn classify_dense(bg: &BlockGraph, t: &Task, threshold: f64) -> bool {
    bg.block_avg_degree(t.j, t.k)
        .max(bg.block_avg_degree(t.i, t.k))
        >= threshold
}

/// Stable sort into non-increasing estimated weight; ties keep the
/// composition order.
pub fn order_tasks(mut tl: TaskList) -> TaskList {
    tl.tasks
        .sort_by(|a, b| b.est_weight.total_cmp(&a.est_weight));
    tl
}

/// Composition, estimation, classification, and ordering in one step.
pub fn build_task_list(bg: &BlockGraph, estimator: Estimator, dense_threshold: f64) -> TaskList {
    let mut tl = compose_tasks(bg);
    for t in tl.tasks.iter_mut() {
        t.est_weight = estimate_weight(bg, t, estimator);
        t.dense = classify_dense(bg, t, dense_threshold);
    }
    order_tasks(tl)
}

/// Instrumented merge-comparison count of one task: the "true" workload
/// used to judge estimators without wall-clock noise.
pub fn task_true_cost(bg: &BlockGraph, t: &Task) -> u64 {
    task_count_list_ops(bg.block(t.i, t.j), bg.block(t.j, t.k), bg.block(t.i, t.k)).1
}

/// How well an ordered queue predicts the truly heavy tasks.
#[derive(Debug, Clone, Serialize)]
pub struct CoverageRow {
    /// Size of the true-heaviest set examined.
    pub top_x: usize,
    /// Shortest queue prefix containing all of them.
    pub min_prefix: usize,
    /// `min_prefix / |T|`.
    pub min_prefix_fraction: f64,
}

/// Positions of `ordered`'s tasks ranked by true cost, heaviest first.
/// Ties break on the triplet so the ranking is estimator-independent.
fn true_rank(bg: &BlockGraph, ordered: &TaskList) -> Vec<usize> {
    let costs: Vec<u64> = ordered
        .tasks()
        .iter()
        .map(|t| task_true_cost(bg, t))
        .collect();
    let mut rank: Vec<usize> = (0..costs.len()).collect();
    rank.sort_by_key(|&pos| (Reverse(costs[pos]), ordered.tasks()[pos].triplet()));
    rank
}

/// For each `x`, the least queue prefix of `ordered` that covers the true
/// top-`x` heaviest tasks. Reported data, not an assertion.
pub fn coverage_table(bg: &BlockGraph, ordered: &TaskList, top_xs: &[usize]) -> Vec<CoverageRow> {
    let rank = true_rank(bg, ordered);
    let total = ordered.len().max(1);
    top_xs
        .iter()
        .filter(|&&x| x > 0 && x <= ordered.len())
        .map(|&x| {
            let min_prefix = rank[..x].iter().copied().max().unwrap_or(0) + 1;
            CoverageRow {
                top_x: x,
                min_prefix,
                min_prefix_fraction: min_prefix as f64 / total as f64,
            }
        })
        .collect()
}

/// Fraction of the true top-`x` heaviest tasks found within the first
/// `prefix` queue positions of `ordered`.
pub fn fraction_of_true_top_in_prefix(
    bg: &BlockGraph,
    ordered: &TaskList,
    x: usize,
    prefix: usize,
) -> f64 {
    if x == 0 {
        return 1.0;
    }
    let rank = true_rank(bg, ordered);
    let x = x.min(rank.len());
    let hits = rank[..x].iter().filter(|&&pos| pos < prefix).count();
    hits as f64 / x as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcsr::build_block_graph;
    use crate::kernels::task_count_list;
    use crate::partition::{partition_symmetric, PartitionVector};
    use crate::testutil::{gnp, graph};

    fn block_graph(n: usize, q: f64, seed: u64, p: usize) -> BlockGraph {
        let g = gnp(n, q, seed);
        let pv = partition_symmetric(&g, p);
        build_block_graph(&g, &pv)
    }

    #[test]
    fn task_count_formula() {
        for p in 1..=64usize {
            assert_eq!(TaskList::expected_len(p), p * (p + 1) * (p + 2) / 6);
        }
        assert_eq!(TaskList::expected_len(8), 120);
        assert_eq!(TaskList::expected_len(12), 364);
        assert_eq!(TaskList::expected_len(20), 1540);
    }

    #[test]
    fn composition_order_for_three_parts() {
        let bg = block_graph(30, 0.2, 1, 3);
        let tl = compose_tasks(&bg);
        let triplets: Vec<(usize, usize, usize)> = tl.tasks().iter().map(|t| t.triplet()).collect();
        assert_eq!(
            triplets,
            vec![
                (0, 0, 0),
                (0, 0, 1),
                (0, 0, 2),
                (0, 1, 1),
                (0, 1, 2),
                (0, 2, 2),
                (1, 1, 1),
                (1, 1, 2),
                (1, 2, 2),
                (2, 2, 2),
            ]
        );
    }

    #[test]
    fn composition_is_a_bijection_onto_triplets() {
        let bg = block_graph(60, 0.1, 2, 5);
        let tl = compose_tasks(&bg);
        assert_eq!(tl.len(), TaskList::expected_len(5));
        let mut seen = std::collections::HashSet::new();
        for t in tl.tasks() {
            assert!(t.i <= t.j && t.j <= t.k && t.k < 5);
            assert!(seen.insert(t.triplet()));
        }
        // Every block shows up in at least one task.
        for i in 0..5 {
            for j in i..5 {
                assert!(
                    tl.tasks().iter().any(|t| (t.i, t.j) == (i, j)
                        || (t.j, t.k) == (i, j)
                        || (t.i, t.k) == (i, j)),
                    "block ({i},{j}) unused"
                );
            }
        }
    }

    #[test]
    fn single_part_composes_one_task() {
        let bg = block_graph(10, 0.3, 3, 1);
        let tl = compose_tasks(&bg);
        assert_eq!(tl.len(), 1);
        assert_eq!(tl.tasks()[0].triplet(), (0, 0, 0));
    }

    #[test]
    fn bbtc_weight_formula() {
        let bg = block_graph(50, 0.15, 4, 4);
        for t in compose_tasks(&bg).tasks() {
            let want = bg.block(t.i, t.j).nnz() as f64
                * bg.block_avg_degree(t.i, t.k)
                    .max(bg.block_avg_degree(t.j, t.k));
            assert_eq!(estimate_weight(&bg, t, Estimator::Bbtc), want);
            if bg.block(t.i, t.j).nnz() == 0 {
                assert_eq!(estimate_weight(&bg, t, Estimator::Bbtc), 0.0);
            }
        }
    }

    #[test]
    fn alternative_estimators_recompute_from_blocks() {
        let bg = block_graph(50, 0.15, 4, 3);
        for t in compose_tasks(&bg).tasks() {
            let blocks = [bg.block(t.i, t.j), bg.block(t.j, t.k), bg.block(t.i, t.k)];
            let nnz: usize = blocks.iter().map(|b| b.nnz()).sum();
            assert_eq!(estimate_weight(&bg, t, Estimator::Nnz), nnz as f64);
            let degree: f64 = blocks.iter().map(|b| b.avg_degree()).sum();
            assert!((estimate_weight(&bg, t, Estimator::Degree) - degree).abs() < 1e-12);
        }
    }

    #[test]
    fn dense_classification_thresholds() {
        let bg = block_graph(40, 0.2, 6, 3);
        let tl = compose_tasks(&bg);
        for t in tl.tasks() {
            // Threshold 0 marks everything dense.
            assert!(classify_dense(&bg, t, 0.0));
            let max_delta = bg
                .block_avg_degree(t.j, t.k)
                .max(bg.block_avg_degree(t.i, t.k));
            assert_eq!(classify_dense(&bg, t, 4.0), max_delta >= 4.0);
        }
        // An all-empty task is sparse for any positive threshold.
        let empty = block_graph(10, 0.0, 0, 2);
        for t in compose_tasks(&empty).tasks() {
            assert!(!classify_dense(&empty, t, 1e-9));
        }
    }

    #[test]
    fn ordering_is_stable_and_sorted() {
        let bg = block_graph(30, 0.2, 8, 3);
        let mut tl = compose_tasks(&bg);
        // Equal weights: composition order must survive.
        let before: Vec<_> = tl.tasks().iter().map(|t| t.triplet()).collect();
        let after: Vec<_> = order_tasks(tl.clone())
            .tasks()
            .iter()
            .map(|t| t.triplet())
            .collect();
        assert_eq!(before, after);

        tl.tasks[0].est_weight = 1.0;
        tl.tasks[1].est_weight = 5.0;
        tl.tasks[2].est_weight = 3.0;
        let ordered = order_tasks(tl);
        let weights: Vec<f64> = ordered.tasks().iter().map(|t| t.est_weight).collect();
        assert_eq!(&weights[..3], &[5.0, 3.0, 1.0]);
        for w in weights.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn zero_bbtc_weight_means_zero_count() {
        let bg = block_graph(60, 0.08, 10, 4);
        let tl = build_task_list(&bg, Estimator::Bbtc, DEFAULT_DENSE_THRESHOLD);
        for t in tl.tasks() {
            if t.est_weight == 0.0 {
                let count =
                    task_count_list(bg.block(t.i, t.j), bg.block(t.j, t.k), bg.block(t.i, t.k));
                assert_eq!(count, 0);
            }
        }
    }

    #[test]
    fn coverage_prefix_bounds() {
        let bg = block_graph(80, 0.15, 5, 4);
        let tl = build_task_list(&bg, Estimator::Bbtc, DEFAULT_DENSE_THRESHOLD);
        let rows = coverage_table(&bg, &tl, &[1, 4, 8]);
        assert_eq!(rows.len(), 3);
        for row in &rows {
            assert!(row.min_prefix >= row.top_x);
            assert!(row.min_prefix <= tl.len());
        }
        // Whole queue always covers everything.
        assert_eq!(fraction_of_true_top_in_prefix(&bg, &tl, 8, tl.len()), 1.0);
    }

    #[test]
    fn estimator_parses_from_cli_names() {
        assert_eq!("bbtc".parse::<Estimator>().unwrap(), Estimator::Bbtc);
        assert_eq!("density".parse::<Estimator>().unwrap(), Estimator::Density);
        assert!("fancy".parse::<Estimator>().is_err());
    }

    #[test]
    fn empty_graph_still_composes() {
        let g = graph(&[]);
        let pv = PartitionVector::single(0);
        let bg = build_block_graph(&g, &pv);
        let tl = build_task_list(&bg, Estimator::Bbtc, DEFAULT_DENSE_THRESHOLD);
        assert_eq!(tl.len(), 1);
        assert_eq!(tl.tasks()[0].est_weight, 0.0);
    }
}

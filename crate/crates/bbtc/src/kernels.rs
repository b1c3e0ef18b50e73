//! Pure counting kernels: sorted-list intersection, hashmap marking, the
//! whole-graph baselines, and the per-task block kernels.
//!
//! Every kernel is reentrant over shared immutable graph data; the scratch
//! map is the only mutable state and is owned by one worker at a time.

use crate::bcsr::SubgraphBlock;
use crate::graph::GraphCsr;

/// Dense marking array keyed by local destination id.
///
/// Entries are epoch-tagged so a task switch clears the map in O(1): a slot
/// counts as marked only if its epoch matches the current one and its value
/// equals the probing key, which is exactly the `H[w] = u` test the hashmap
/// kernels rely on.
#[derive(Debug)]
pub struct ScratchMap {
    epochs: Vec<u64>,
    values: Vec<usize>,
    epoch: u64,
}

impl ScratchMap {
    pub fn new(capacity: usize) -> Self {
        ScratchMap {
            epochs: vec![0; capacity],
            values: vec![0; capacity],
            epoch: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.epochs.len()
    }

    /// Starts a fresh marking scope; everything marked before is forgotten.
    pub fn begin(&mut self) {
        self.epoch += 1;
    }

    #[inline]
    fn mark(&mut self, slot: usize, key: usize) {
        self.epochs[slot] = self.epoch;
        self.values[slot] = key;
    }

    #[inline]
    fn is_marked(&self, slot: usize, key: usize) -> bool {
        self.epochs[slot] == self.epoch && self.values[slot] == key
    }
}

/// Latapy-style hybrid dispatch: vertices with full degree above
/// `k_threshold` take the hashmap path, the rest take the merge path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatapyConfig {
    pub k_threshold: u64,
}

impl LatapyConfig {
    pub const fn new(k_threshold: u64) -> Self {
        LatapyConfig { k_threshold }
    }

    /// Every vertex takes the merge path.
    pub const fn list_only() -> Self {
        LatapyConfig {
            k_threshold: u64::MAX,
        }
    }

    /// Every non-isolated vertex takes the hashmap path.
    pub const fn hash_only() -> Self {
        LatapyConfig { k_threshold: 0 }
    }
}

impl Default for LatapyConfig {
    fn default() -> Self {
        LatapyConfig { k_threshold: 32 }
    }
}

/// `|a ∩ b|` for strictly increasing slices.
pub fn intersect_count(a: &[usize], b: &[usize]) -> u64 {
    let (mut i, mut j, mut c) = (0, 0, 0u64);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            c += 1;
            i += 1;
            j += 1;
        } else if a[i] < b[j] {
            i += 1;
        } else {
            j += 1;
        }
    }
    c
}

/// [`intersect_count`] plus the number of element comparisons performed
/// (one per merge step). Used to measure true task workloads.
pub fn intersect_count_ops(a: &[usize], b: &[usize]) -> (u64, u64) {
    let (mut i, mut j, mut c, mut ops) = (0, 0, 0u64, 0u64);
    while i < a.len() && j < b.len() {
        ops += 1;
        if a[i] == b[j] {
            c += 1;
            i += 1;
            j += 1;
        } else if a[i] < b[j] {
            i += 1;
        } else {
            j += 1;
        }
    }
    (c, ops)
}

/// Whole-graph merge-based count: for each stored edge `(u, v)`, intersect
/// the (larger-id) neighbor lists of `u` and `v`.
pub fn tc_list(g: &GraphCsr) -> u64 {
    let mut tau = 0u64;
    for u in 0..g.vertex_count() {
        let nu = g.neighbors(u);
        for &v in nu {
            tau += intersect_count(nu, g.neighbors(v));
        }
    }
    tau
}

/// Whole-graph hashmap count: mark `N(G,u)`, then probe with the neighbors
/// of each `v ∈ N(G,u)`. Requires `scratch.capacity() >= n`.
pub fn tc_hash(g: &GraphCsr, scratch: &mut ScratchMap) -> u64 {
    assert!(
        scratch.capacity() >= g.vertex_count(),
        "scratch smaller than the vertex range"
    );
    scratch.begin();
    let mut tau = 0u64;
    for u in 0..g.vertex_count() {
        let nu = g.neighbors(u);
        for &v in nu {
            scratch.mark(v, u);
        }
        for &v in nu {
            for &w in g.neighbors(v) {
                if scratch.is_marked(w, u) {
                    tau += 1;
                }
            }
        }
    }
    tau
}

/// Hybrid sequential baseline: per-vertex dispatch between the merge and
/// hashmap paths on the full (undirected) degree. Exact for every K.
pub fn tc_latapy(g: &GraphCsr, cfg: LatapyConfig) -> u64 {
    let deg = g.full_degrees();
    let mut scratch = ScratchMap::new(g.vertex_count());
    scratch.begin();
    let mut tau = 0u64;
    for (u, &full_degree) in deg.iter().enumerate() {
        let nu = g.neighbors(u);
        if nu.is_empty() {
            continue;
        }
        if full_degree as u64 > cfg.k_threshold {
            for &v in nu {
                scratch.mark(v, u);
            }
            for &v in nu {
                for &w in g.neighbors(v) {
                    if scratch.is_marked(w, u) {
                        tau += 1;
                    }
                }
            }
        } else {
            for &v in nu {
                tau += intersect_count(nu, g.neighbors(v));
            }
        }
    }
    tau
}

fn check_task_geometry(first: &SubgraphBlock, second: &SubgraphBlock, third: &SubgraphBlock) {
    let (i, j) = first.coords();
    let (j2, k) = second.coords();
    let (i2, k2) = third.coords();
    assert!(
        j == j2 && i == i2 && k == k2,
        "blocks ({i},{j}), ({j2},{k}), ({i2},{k2}) do not form a task"
    );
}

/// Triangles whose first edge lies in `first = G_{i,j}`, second in
/// `second = G_{j,k}`, third in `third = G_{i,k}`, by merge intersection.
/// All comparisons happen in `V_k`-local id space.
pub fn task_count_list(
    first: &SubgraphBlock,
    second: &SubgraphBlock,
    third: &SubgraphBlock,
) -> u64 {
    check_task_geometry(first, second, third);
    let mut tau = 0u64;
    for r in 0..first.src_count() {
        let candidates = third.local_row(r);
        if candidates.is_empty() {
            continue;
        }
        for &v in first.local_row(r) {
            tau += intersect_count(candidates, second.local_row(v));
        }
    }
    tau
}

/// [`task_count_list`] plus the exact number of merge comparisons, the
/// instrumented "true" workload of the task.
pub fn task_count_list_ops(
    first: &SubgraphBlock,
    second: &SubgraphBlock,
    third: &SubgraphBlock,
) -> (u64, u64) {
    check_task_geometry(first, second, third);
    let mut tau = 0u64;
    let mut ops = 0u64;
    for r in 0..first.src_count() {
        let candidates = third.local_row(r);
        if candidates.is_empty() {
            continue;
        }
        for &v in first.local_row(r) {
            let (c, o) = intersect_count_ops(candidates, second.local_row(v));
            tau += c;
            ops += o;
        }
    }
    (tau, ops)
}

/// Hashmap variant of the task kernel: mark `N(G_{i,k}, u)`, probe with
/// `w ∈ N(G_{j,k}, v)`. `scratch` must cover `|V_k|` slots; the three
/// blocks may alias (diagonal tasks) since they are only read.
pub fn task_count_hash(
    first: &SubgraphBlock,
    second: &SubgraphBlock,
    third: &SubgraphBlock,
    scratch: &mut ScratchMap,
) -> u64 {
    check_task_geometry(first, second, third);
    assert!(
        scratch.capacity() >= third.dst_count(),
        "scratch smaller than the destination part"
    );
    scratch.begin();
    let mut tau = 0u64;
    for r in 0..first.src_count() {
        let marks = third.local_row(r);
        if marks.is_empty() {
            continue;
        }
        let key = first.src_base() + r;
        for &w in marks {
            scratch.mark(w, key);
        }
        for &v in first.local_row(r) {
            for &w in second.local_row(v) {
                if scratch.is_marked(w, key) {
                    tau += 1;
                }
            }
        }
    }
    tau
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcsr::build_block_graph;
    use crate::oracle::brute_force;
    use crate::partition::{partition_symmetric, PartitionVector};
    use crate::testutil::{complete, gnp, star};

    #[test]
    fn intersect_basics() {
        assert_eq!(intersect_count(&[], &[1, 2]), 0);
        assert_eq!(intersect_count(&[1, 3, 5], &[3, 5, 7]), 2);
        assert_eq!(intersect_count(&[1, 2, 3], &[4, 5]), 0);
    }

    #[test]
    fn intersect_matches_hash_set_oracle() {
        // Two deterministic pseudo-random sorted 1000-element samples.
        let sample = |seed: u64| -> Vec<usize> {
            let mut state = seed;
            let mut out: Vec<usize> = (0..1000)
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    (state >> 33) as usize % 5000
                })
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        };
        let a = sample(1);
        let b = sample(2);
        let set: std::collections::HashSet<usize> = a.iter().copied().collect();
        let want = b.iter().filter(|v| set.contains(v)).count() as u64;
        assert_eq!(intersect_count(&a, &b), want);
        let (c, ops) = intersect_count_ops(&a, &b);
        assert_eq!(c, want);
        assert!(ops >= c && ops <= (a.len() + b.len()) as u64);
    }

    #[test]
    fn list_kernel_on_small_cliques() {
        assert_eq!(tc_list(&complete(3)), 1);
        assert_eq!(tc_list(&complete(5)), 10);
    }

    #[test]
    fn list_kernel_matches_brute_force() {
        let g = gnp(60, 0.15, 3);
        assert_eq!(tc_list(&g), brute_force(&g));
    }

    #[test]
    fn hash_kernel_agrees_with_list() {
        let mut scratch = ScratchMap::new(60);
        assert_eq!(tc_hash(&complete(3), &mut scratch), 1);
        assert_eq!(tc_hash(&star(9), &mut scratch), 0);
        let g = gnp(60, 0.15, 3);
        assert_eq!(tc_hash(&g, &mut scratch), tc_list(&g));
    }

    #[test]
    fn latapy_extremes_collapse_to_one_path() {
        let g = gnp(50, 0.2, 8);
        let mut scratch = ScratchMap::new(50);
        assert_eq!(tc_latapy(&g, LatapyConfig::list_only()), tc_list(&g));
        assert_eq!(
            tc_latapy(&g, LatapyConfig::hash_only()),
            tc_hash(&g, &mut scratch)
        );
    }

    #[test]
    fn latapy_exact_for_mid_thresholds() {
        let g = gnp(80, 0.1, 12);
        let want = brute_force(&g);
        for k in [2, 8, 32] {
            assert_eq!(tc_latapy(&g, LatapyConfig::new(k)), want, "K={k}");
        }
    }

    #[test]
    fn degenerate_task_equals_whole_graph() {
        let g = gnp(40, 0.2, 5);
        let bg = build_block_graph(&g, &PartitionVector::single(40));
        let b = bg.block(0, 0);
        assert_eq!(task_count_list(b, b, b), tc_list(&g));
        let mut scratch = ScratchMap::new(40);
        assert_eq!(task_count_hash(b, b, b, &mut scratch), tc_list(&g));
    }

    #[test]
    fn empty_first_block_counts_nothing() {
        // Parts sized so block (0,1) is empty.
        let g = crate::testutil::graph(&[(2, 3), (0, 1)]);
        let pv = PartitionVector::from_cuts(vec![0, 2, 4]);
        let bg = build_block_graph(&g, &pv);
        assert_eq!(bg.block(0, 1).nnz(), 0);
        let t = task_count_list(bg.block(0, 1), bg.block(1, 1), bg.block(0, 1));
        assert_eq!(t, 0);
    }

    #[test]
    fn per_task_counts_match_triangle_block_assignment() {
        // Enumerate triangles by brute force, map each to the block triplet
        // its edges land in, and compare the resulting multiset of counts
        // against the per-task kernel outputs.
        let g = gnp(100, 0.1, 19);
        let pv = partition_symmetric(&g, 4);
        let bg = build_block_graph(&g, &pv);
        let n = g.vertex_count();

        let mut adj = vec![false; n * n];
        for (u, v) in g.edges() {
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        let mut by_triplet = std::collections::HashMap::new();
        for u in 0..n {
            for v in u + 1..n {
                if !adj[u * n + v] {
                    continue;
                }
                for w in v + 1..n {
                    if adj[u * n + w] && adj[v * n + w] {
                        let (i, j, k) = (pv.part_of(u), pv.part_of(v), pv.part_of(w));
                        assert!(i <= j && j <= k, "edges must land upper-triangular");
                        *by_triplet.entry((i, j, k)).or_insert(0u64) += 1;
                    }
                }
            }
        }

        let p = bg.part_count();
        let mut total = 0u64;
        for i in 0..p {
            for j in i..p {
                for k in j..p {
                    let got = task_count_list(bg.block(i, j), bg.block(j, k), bg.block(i, k));
                    let want = by_triplet.get(&(i, j, k)).copied().unwrap_or(0);
                    assert_eq!(got, want, "task {{{i},{j},{k}}}");
                    total += got;
                }
            }
        }
        assert_eq!(total, brute_force(&g));
    }

    #[test]
    fn task_sum_matches_brute_force_and_kernels_agree() {
        let g = gnp(40, 0.2, 7);
        let pv = partition_symmetric(&g, 3);
        let bg = build_block_graph(&g, &pv);
        let p = bg.part_count();
        let mut scratch = ScratchMap::new(bg.max_part_len());
        let mut total = 0u64;
        for i in 0..p {
            for j in i..p {
                for k in j..p {
                    let (first, second, third) = (bg.block(i, j), bg.block(j, k), bg.block(i, k));
                    let by_list = task_count_list(first, second, third);
                    let by_hash = task_count_hash(first, second, third, &mut scratch);
                    assert_eq!(by_list, by_hash, "task {{{i},{j},{k}}}");
                    total += by_list;
                }
            }
        }
        assert_eq!(total, brute_force(&g));
    }
}

//! Symmetric rectilinear partitioning of the ordered adjacency matrix.
//!
//! One cut vector is applied to both rows and columns, so diagonal blocks
//! are square and every stored edge `(u, v)` with `u < v` lands in an
//! upper-triangular block `(i, j)` with `i <= j`. The heuristic targets the
//! maximum block nonzero count: greedy prefix chunking of the full-degree
//! marginal, then a bounded refinement sweep that nudges interior cuts while
//! the max strictly drops.

use serde::Serialize;

use crate::graph::GraphCsr;

/// The shared row/column cut vector: part `i` is the vertex id range
/// `[cuts[i], cuts[i+1])`. Always `cuts[0] = 0` and `cuts[p] = n`; empty
/// parts are legal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionVector {
    cuts: Vec<usize>,
}

impl PartitionVector {
    /// Wraps an explicit cut vector. Panics unless it is monotone and
    /// anchored at 0.
    pub fn from_cuts(cuts: Vec<usize>) -> Self {
        assert!(cuts.len() >= 2, "need at least one part");
        assert_eq!(cuts[0], 0, "cuts must start at 0");
        assert!(
            cuts.windows(2).all(|w| w[0] <= w[1]),
            "cuts must be monotone"
        );
        PartitionVector { cuts }
    }

    /// The trivial single-part vector `[0, n]`.
    pub fn single(n: usize) -> Self {
        PartitionVector { cuts: vec![0, n] }
    }

    pub fn part_count(&self) -> usize {
        self.cuts.len() - 1
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn vertex_count(&self) -> usize {
        *self.cuts.last().unwrap()
    }

    /// Part index of vertex `v`: the unique `i` with
    /// `cuts[i] <= v < cuts[i+1]` (empty parts are skipped over).
    pub fn part_of(&self, v: usize) -> usize {
        debug_assert!(v < self.vertex_count());
        self.cuts.partition_point(|&c| c <= v) - 1
    }

    pub fn part_range(&self, i: usize) -> std::ops::Range<usize> {
        self.cuts[i]..self.cuts[i + 1]
    }

    pub fn part_len(&self, i: usize) -> usize {
        self.cuts[i + 1] - self.cuts[i]
    }
}

/// Balance numbers for a partitioned graph, all over the upper-triangular
/// blocks. Degrees here are the ordered `d(G, u)` (larger neighbors only),
/// so the `c` ratios stay within `[1, p]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionStats {
    pub p: usize,
    /// Max nonzeros over the p(p+1)/2 blocks.
    pub m_max: u64,
    /// 2m / (p (p+1)).
    pub m_avg: f64,
    /// Load imbalance m_max / m_avg; 1 for the empty graph.
    pub lambda: f64,
    pub d_max: usize,
    /// Max partial degree over all blocks.
    pub d_max_blk: usize,
    pub c_max: f64,
    pub d_avg: f64,
    /// Mean over blocks of the block average partial degree.
    pub d_avg_blk: f64,
    pub c_avg: f64,
}

/// Index of block (i, j), i <= j, in row-major upper-triangular order.
pub(crate) fn tri_index(p: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < p);
    i * (2 * p - i + 1) / 2 + (j - i)
}

pub(crate) fn tri_block_count(p: usize) -> usize {
    p * (p + 1) / 2
}

/// Default part count when none is requested: the full average degree,
/// clamped to [4, 64] (and never above n).
pub fn auto_parts(g: &GraphCsr) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 1;
    }
    let avg = 2.0 * g.edge_count() as f64 / n as f64;
    (avg.round() as usize).clamp(4, 64).min(n).max(1)
}

/// Produces a symmetric rectilinear partition into `p` parts.
///
/// `p` is clamped to `[1, n]` (the single empty part for `n = 0`); `p = 0`
/// is rejected. Deterministic for a fixed input.
pub fn partition_symmetric(g: &GraphCsr, p: usize) -> PartitionVector {
    assert!(p > 0, "p = 0 rejected");
    let n = g.vertex_count();
    let p = p.min(n).max(1);

    // Greedy prefix chunking of the symmetrized marginal (full degrees).
    let deg = g.full_degrees();
    let mut prefix = vec![0u64; n + 1];
    for v in 0..n {
        prefix[v + 1] = prefix[v] + deg[v] as u64;
    }
    let total = prefix[n];

    let mut cuts = vec![0usize; p + 1];
    cuts[p] = n;
    if total == 0 {
        // Edgeless graph: any cut vector is optimal, use an even id split.
        for (i, cut) in cuts.iter_mut().enumerate().take(p).skip(1) {
            *cut = i * n / p;
        }
        return PartitionVector { cuts };
    }
    for i in 1..p {
        let target = (i as u64) * total;
        let at = prefix.partition_point(|&s| s * (p as u64) < target);
        cuts[i] = at.max(cuts[i - 1]).min(n);
    }

    refine_cuts(g, &mut cuts);
    PartitionVector { cuts }
}

/// Moves each interior cut by one vertex while the max block nonzero count
/// strictly decreases, for at most 2p sweeps. Block counts are kept
/// incrementally: a one-vertex move only touches the blocks of the edges
/// incident to the crossing vertex.
fn refine_cuts(g: &GraphCsr, cuts: &mut [usize]) {
    let p = cuts.len() - 1;
    if p < 2 || g.edge_count() == 0 {
        return;
    }

    let rev = reverse_adjacency(g);
    let mut counts = block_nnz_counts(g, cuts);
    let mut m_max = counts.iter().copied().max().unwrap_or(0);

    for _ in 0..2 * p {
        let mut improved = false;
        for c in 1..p {
            let mut best: Option<(isize, u64)> = None;
            for dir in [-1isize, 1isize] {
                let legal = if dir == 1 {
                    cuts[c] < cuts[c + 1]
                } else {
                    cuts[c] > cuts[c - 1]
                };
                if !legal {
                    continue;
                }
                let (x, from, to) = move_of(cuts, c, dir);
                apply_move(&mut counts, g, &rev, cuts, x, from, to);
                let cand = counts.iter().copied().max().unwrap_or(0);
                apply_move(&mut counts, g, &rev, cuts, x, to, from);
                if cand < m_max && best.is_none_or(|(_, b)| cand < b) {
                    best = Some((dir, cand));
                }
            }
            if let Some((dir, new_max)) = best {
                let (x, from, to) = move_of(cuts, c, dir);
                apply_move(&mut counts, g, &rev, cuts, x, from, to);
                cuts[c] = (cuts[c] as isize + dir) as usize;
                m_max = new_max;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
}

/// The vertex crossing cut `c` when it moves by `dir`, and its old/new parts.
fn move_of(cuts: &[usize], c: usize, dir: isize) -> (usize, usize, usize) {
    if dir == 1 {
        (cuts[c], c, c - 1)
    } else {
        (cuts[c] - 1, c - 1, c)
    }
}

/// Re-homes every edge incident to `x` from part `from` to part `to` in the
/// incremental block counts. Neighbor parts are unchanged by a single-vertex
/// move, so they are looked up against the current cuts.
fn apply_move(
    counts: &mut [u64],
    g: &GraphCsr,
    rev: &ReverseAdjacency,
    cuts: &[usize],
    x: usize,
    from: usize,
    to: usize,
) {
    let p = cuts.len() - 1;
    let part_of = |v: usize| cuts.partition_point(|&c| c <= v) - 1;
    for &w in g.neighbors(x) {
        let j = part_of(w);
        counts[tri_index(p, from, j)] -= 1;
        counts[tri_index(p, to, j)] += 1;
    }
    for &w in rev.neighbors(x) {
        let i = part_of(w);
        counts[tri_index(p, i, from)] -= 1;
        counts[tri_index(p, i, to)] += 1;
    }
}

struct ReverseAdjacency {
    offsets: Vec<usize>,
    sources: Vec<usize>,
}

impl ReverseAdjacency {
    fn neighbors(&self, v: usize) -> &[usize] {
        &self.sources[self.offsets[v]..self.offsets[v + 1]]
    }
}

fn reverse_adjacency(g: &GraphCsr) -> ReverseAdjacency {
    let n = g.vertex_count();
    let mut offsets = vec![0usize; n + 1];
    for (_, v) in g.edges() {
        offsets[v + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut sources = vec![0usize; g.edge_count()];
    for (u, v) in g.edges() {
        sources[fill[v]] = u;
        fill[v] += 1;
    }
    ReverseAdjacency { offsets, sources }
}

/// Nonzeros per upper-triangular block for an arbitrary cut vector.
pub(crate) fn block_nnz_counts(g: &GraphCsr, cuts: &[usize]) -> Vec<u64> {
    let p = cuts.len() - 1;
    let mut counts = vec![0u64; tri_block_count(p)];
    for u in 0..g.vertex_count() {
        let ns = g.neighbors(u);
        if ns.is_empty() {
            continue;
        }
        let i = cuts.partition_point(|&c| c <= u) - 1;
        let mut j = i;
        for &v in ns {
            while v >= cuts[j + 1] {
                j += 1;
            }
            counts[tri_index(p, i, j)] += 1;
        }
    }
    counts
}

/// Computes the balance statistics of `pv` over `g`.
pub fn partition_stats(g: &GraphCsr, pv: &PartitionVector) -> PartitionStats {
    let p = pv.part_count();
    let n = g.vertex_count();
    let m = g.edge_count() as u64;
    let cuts = pv.cuts();

    let counts = block_nnz_counts(g, cuts);
    let m_max = counts.iter().copied().max().unwrap_or(0);
    let blocks = tri_block_count(p) as f64;
    let m_avg = 2.0 * m as f64 / (p as f64 * (p + 1) as f64);
    let lambda = if m_avg == 0.0 {
        1.0
    } else {
        m_max as f64 / m_avg
    };

    // Max partial degree: longest per-part run in any neighbor list.
    let mut d_max = 0usize;
    let mut d_max_blk = 0usize;
    for u in 0..n {
        let ns = g.neighbors(u);
        d_max = d_max.max(ns.len());
        let mut j = pv.part_of(u);
        let mut run = 0usize;
        for &v in ns {
            if v >= cuts[j + 1] {
                d_max_blk = d_max_blk.max(run);
                run = 0;
                while v >= cuts[j + 1] {
                    j += 1;
                }
            }
            run += 1;
        }
        d_max_blk = d_max_blk.max(run);
    }
    let c_max = if d_max_blk == 0 {
        1.0
    } else {
        d_max as f64 / d_max_blk as f64
    };

    let d_avg = if n == 0 { 0.0 } else { m as f64 / n as f64 };
    let mut delta_sum = 0.0;
    for i in 0..p {
        let rows = pv.part_len(i);
        if rows == 0 {
            continue;
        }
        for j in i..p {
            delta_sum += counts[tri_index(p, i, j)] as f64 / rows as f64;
        }
    }
    let d_avg_blk = delta_sum / blocks;
    let c_avg = if d_avg_blk == 0.0 {
        1.0
    } else {
        d_avg / d_avg_blk
    };

    PartitionStats {
        p,
        m_max,
        m_avg,
        lambda,
        d_max,
        d_max_blk,
        c_max,
        d_avg,
        d_avg_blk,
        c_avg,
    }
}

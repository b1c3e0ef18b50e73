//! Brute-force triangle enumeration over a dense adjacency matrix.
//!
//! Cubic and memory-hungry, so it is only intended as the reference for
//! `verify` runs and tests on small graphs. It walks vertex triples
//! directly and never touches the kernel or block machinery.

use crate::graph::GraphCsr;

/// Exact triangle count by triple enumeration, O(n^3). Panics if the graph
/// is larger than `max_n` vertices (dense matrix guard).
pub fn brute_force_bounded(g: &GraphCsr, max_n: usize) -> u64 {
    let n = g.vertex_count();
    assert!(
        n <= max_n,
        "graph too large for the brute-force oracle ({n} > {max_n})"
    );
    let mut adj = vec![false; n * n];
    for (u, v) in g.edges() {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    let mut tau = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            if !adj[u * n + v] {
                continue;
            }
            for w in v + 1..n {
                if adj[u * n + w] && adj[v * n + w] {
                    tau += 1;
                }
            }
        }
    }
    tau
}

/// [`brute_force_bounded`] with the default 2000-vertex guard.
pub fn brute_force(g: &GraphCsr) -> u64 {
    brute_force_bounded(g, 2000)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonicalize, RawEdgeList};

    #[test]
    fn counts_small_cliques() {
        let k4 = canonicalize(&RawEdgeList::from_edges(vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
        ]));
        assert_eq!(brute_force(&k4), 4);
        let empty = canonicalize(&RawEdgeList::default());
        assert_eq!(brute_force(&empty), 0);
    }
}

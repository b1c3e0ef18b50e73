//! Canonical graph representation: simple, undirected, upper-triangular CSR.
//!
//! Every edge is stored exactly once as `(u, v)` with `u < v`, so each
//! neighbor list holds only larger vertex ids and is strictly increasing.
//! This total ordering is what prevents double counting downstream.

/// Edge pairs as read from an input file, before any cleanup.
///
/// May contain duplicates, self-loops, and both orientations of the same
/// edge; [`canonicalize`] removes all three.
#[derive(Debug, Clone, Default)]
pub struct RawEdgeList {
    /// Vertex count promised by the source (matrix-market header), 0 if unknown.
    pub n_hint: usize,
    pub edges: Vec<(usize, usize)>,
}

impl RawEdgeList {
    pub fn from_edges(edges: Vec<(usize, usize)>) -> Self {
        RawEdgeList { n_hint: 0, edges }
    }
}

/// Upper-triangular CSR adjacency of a simple undirected graph.
///
/// `row_offsets` has length `n + 1`; the neighbors of `u` live in
/// `neighbors[row_offsets[u]..row_offsets[u+1]]`, are all `> u`, and are
/// strictly increasing. `orig_ids[new_id]` maps back to the id the vertex
/// carried in the input file, composed across relabelings.
///
/// Immutable after construction; safe for shared concurrent reads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphCsr {
    n: usize,
    m: usize,
    row_offsets: Vec<usize>,
    neighbors: Vec<usize>,
    orig_ids: Vec<usize>,
}

impl GraphCsr {
    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of undirected edges (each stored once).
    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Neighbors of `u` that are larger than `u`, strictly increasing.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[self.row_offsets[u]..self.row_offsets[u + 1]]
    }

    /// Upper-triangular degree `d(G, u) = |N(G, u)|`.
    pub fn degree(&self, u: usize) -> usize {
        self.row_offsets[u + 1] - self.row_offsets[u]
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    /// Original input id of the vertex currently labeled `u`.
    pub fn orig_id(&self, u: usize) -> usize {
        self.orig_ids[u]
    }

    /// Iterates all stored edges `(u, v)` with `u < v`, in row order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// Full undirected degree of every vertex (counting both endpoints of
    /// each stored edge). This is the degree used for ordering and for the
    /// Latapy dispatch threshold, not the upper-triangular `d(G, u)`.
    pub fn full_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for (u, v) in self.edges() {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Exports the stored edge set as a raw list (used by the round-trip
    /// idempotence checks and the file writers).
    pub fn to_raw(&self) -> RawEdgeList {
        RawEdgeList {
            n_hint: self.n,
            edges: self.edges().collect(),
        }
    }
}

/// Builds the canonical upper-triangular CSR from a raw pair list.
///
/// Self-loops are dropped, each undirected edge is stored once as
/// `(min, max)`, and neighbor lists come out sorted and deduplicated.
/// `n` is `1 + max vertex id seen` or `n_hint` if that is larger; an empty
/// input yields the empty graph.
pub fn canonicalize(raw: &RawEdgeList) -> GraphCsr {
    let mut n = raw.n_hint;
    for &(u, v) in &raw.edges {
        n = n.max(u + 1).max(v + 1);
    }

    let mut pairs: Vec<(usize, usize)> = raw
        .edges
        .iter()
        .filter(|&&(u, v)| u != v)
        .map(|&(u, v)| if u < v { (u, v) } else { (v, u) })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();

    from_canonical_pairs(n, &pairs, (0..n).collect())
}

/// CSR assembly from already sorted, deduplicated `(u < v)` pairs.
fn from_canonical_pairs(n: usize, pairs: &[(usize, usize)], orig_ids: Vec<usize>) -> GraphCsr {
    let mut row_offsets = vec![0usize; n + 1];
    for &(u, _) in pairs {
        row_offsets[u + 1] += 1;
    }
    for i in 0..n {
        row_offsets[i + 1] += row_offsets[i];
    }
    let neighbors = pairs.iter().map(|&(_, v)| v).collect();
    GraphCsr {
        n,
        m: pairs.len(),
        row_offsets,
        neighbors,
        orig_ids,
    }
}

/// Relabels vertices into non-decreasing full-degree order.
///
/// The degree used is the full undirected degree, computed before the
/// upper-triangular orientation is reapplied. Equal-degree vertices keep
/// their relative order (stable sort), so the output is deterministic.
/// Relabeling is an isomorphism: the triangle count is unchanged.
pub fn degree_order(g: &GraphCsr) -> GraphCsr {
    let deg = g.full_degrees();

    // old ids sorted by (degree, old id): stable tie-break on original order.
    let mut by_degree: Vec<usize> = (0..g.n).collect();
    by_degree.sort_by_key(|&u| (deg[u], u));

    let mut new_id = vec![0usize; g.n];
    for (new, &old) in by_degree.iter().enumerate() {
        new_id[old] = new;
    }

    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (new_id[u], new_id[v]);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();

    let orig_ids = by_degree.iter().map(|&old| g.orig_ids[old]).collect();
    from_canonical_pairs(g.n, &pairs, orig_ids)
}

//! Shared fixtures for unit tests.

use crate::gen::gnp_edges;
use crate::graph::{canonicalize, GraphCsr, RawEdgeList};

pub fn graph(edges: &[(usize, usize)]) -> GraphCsr {
    canonicalize(&RawEdgeList::from_edges(edges.to_vec()))
}

pub fn gnp(n: usize, q: f64, seed: u64) -> GraphCsr {
    canonicalize(&RawEdgeList::from_edges(gnp_edges(n, q, seed)))
}

pub fn complete(n: usize) -> GraphCsr {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    graph(&edges)
}

pub fn star(leaves: usize) -> GraphCsr {
    graph(&(1..=leaves).map(|v| (0, v)).collect::<Vec<_>>())
}

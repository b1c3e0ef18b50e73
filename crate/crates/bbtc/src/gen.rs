//! Seeded synthetic graph generators for tests and benches.
//!
//! Both generators are deterministic for a fixed seed (ChaCha8 stream), so
//! generated files are byte-identical across reruns.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Standard RMAT quadrant probabilities.
#[derive(Debug, Clone, Copy)]
pub struct RmatProbs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for RmatProbs {
    fn default() -> Self {
        RmatProbs {
            a: 0.57,
            b: 0.19,
            c: 0.19,
            d: 0.05,
        }
    }
}

/// Erdős–Rényi G(n, q) over the strict upper triangle, via geometric skip
/// sampling. Pairs come out sorted, each at most once.
pub fn gnp_edges(n: usize, q: f64, seed: u64) -> Vec<(usize, usize)> {
    assert!((0.0..=1.0).contains(&q), "edge probability out of range");
    let mut edges = Vec::new();
    if n < 2 || q <= 0.0 {
        return edges;
    }
    let total = n as u64 * (n as u64 - 1) / 2;
    if q >= 1.0 {
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        return edges;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_keep = (1.0 - q).ln();
    let mut flat: u64 = 0;
    let mut first = true;
    // Row bookkeeping for flat-index -> (u, v) conversion.
    let mut row = 0usize;
    let mut row_base: u64 = 0;
    loop {
        let r: f64 = rng.random();
        let skip = (r.ln() / log_keep).floor() as u64;
        flat = if first { skip } else { flat + skip + 1 };
        first = false;
        if flat >= total {
            break;
        }
        while flat >= row_base + (n - 1 - row) as u64 {
            row_base += (n - 1 - row) as u64;
            row += 1;
        }
        let col = row + 1 + (flat - row_base) as usize;
        edges.push((row, col));
    }
    edges
}

/// RMAT generator: `edge_factor * 2^scale` recursive quadrant descents over
/// a `2^scale`-vertex id space. Exact duplicate pairs are dropped after
/// generation; self-loops and orientation are left for canonicalization.
pub fn rmat_edges(
    scale: u32,
    edge_factor: usize,
    probs: RmatProbs,
    seed: u64,
) -> Vec<(usize, usize)> {
    assert!(scale < usize::BITS, "scale too large for the id width");
    let sum = probs.a + probs.b + probs.c + probs.d;
    assert!(
        (sum - 1.0).abs() < 1e-9,
        "quadrant probabilities must sum to 1"
    );

    let n = 1usize << scale;
    let target = edge_factor * n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(target);
    for _ in 0..target {
        let mut u = 0usize;
        let mut v = 0usize;
        for _ in 0..scale {
            let r: f64 = rng.random();
            let (bit_u, bit_v) = if r < probs.a {
                (0, 0)
            } else if r < probs.a + probs.b {
                (0, 1)
            } else if r < probs.a + probs.b + probs.c {
                (1, 0)
            } else {
                (1, 1)
            };
            u = (u << 1) | bit_u;
            v = (v << 1) | bit_v;
        }
        edges.push((u, v));
    }
    let mut seen = std::collections::HashSet::with_capacity(edges.len());
    edges.retain(|&e| seen.insert(e));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_zero_vertices_is_empty() {
        assert!(gnp_edges(0, 0.5, 1).is_empty());
    }

    #[test]
    fn gnp_deterministic_for_fixed_seed() {
        assert_eq!(gnp_edges(100, 0.1, 9), gnp_edges(100, 0.1, 9));
        assert_ne!(gnp_edges(100, 0.1, 9), gnp_edges(100, 0.1, 10));
    }

    #[test]
    fn gnp_full_probability_is_complete() {
        let edges = gnp_edges(6, 1.0, 0);
        assert_eq!(edges.len(), 15);
    }

    #[test]
    fn gnp_density_is_plausible() {
        let edges = gnp_edges(200, 0.1, 4);
        let expect = 0.1 * (200.0 * 199.0 / 2.0);
        assert!((edges.len() as f64) > expect * 0.7);
        assert!((edges.len() as f64) < expect * 1.3);
        for &(u, v) in &edges {
            assert!(u < v && v < 200);
        }
    }

    #[test]
    fn rmat_bounds_and_determinism() {
        let edges = rmat_edges(10, 8, RmatProbs::default(), 17);
        assert!(edges.len() <= 8 << 10);
        assert!(edges.len() > 4 << 10, "dedup should not halve the target");
        for &(u, v) in &edges {
            assert!(u < 1024 && v < 1024);
        }
        assert_eq!(edges, rmat_edges(10, 8, RmatProbs::default(), 17));
    }
}

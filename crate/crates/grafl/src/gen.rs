//! Seeded random-graph generators for benchmarks and tests.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::Graph;

/// Erdős–Rényi-style G(n, m) graph with `m = n * avg_degree / 2` distinct
/// undirected edges sampled uniformly (no self-loops).
pub fn erdos_renyi(n: usize, avg_degree: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = ((n as f64) * avg_degree / 2.0).round() as usize;
    let max_edges = n.saturating_sub(1) * n / 2;
    let target = target.min(max_edges);
    let mut seen = std::collections::HashSet::with_capacity(target * 2);
    let mut edges = Vec::with_capacity(target);
    while edges.len() < target {
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u == v {
            continue;
        }
        let key = if u < v { (u, v) } else { (v, u) };
        if seen.insert(key) {
            edges.push(key);
        }
    }
    Graph::from_edges(n, &edges, false)
}

/// Bernoulli G(n, p) graph; iterates all pairs, so keep `n` small.
pub fn gnp(n: usize, p: f64, seed: u64, directed: bool) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u == v {
                continue;
            }
            if !directed && u > v {
                continue;
            }
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges, directed)
}

/// Preferential-attachment graph: start from a small clique, then each new
/// node attaches to `m_per_node` distinct existing nodes chosen with
/// probability proportional to degree. Produces heavy-tailed degrees.
pub fn preferential_attachment(n: usize, m_per_node: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m0 = (m_per_node + 1).min(n);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    // One arc endpoint entry per degree unit.
    let mut stubs: Vec<u32> = Vec::new();
    for u in 0..m0 as u32 {
        for v in (u + 1)..m0 as u32 {
            edges.push((u, v));
            stubs.push(u);
            stubs.push(v);
        }
    }
    for v in m0..n {
        let mut chosen = std::collections::HashSet::new();
        let mut guard = 0;
        while chosen.len() < m_per_node.min(v) && guard < 100 * m_per_node + 100 {
            let t = stubs[rng.gen_range(0..stubs.len())];
            chosen.insert(t);
            guard += 1;
        }
        for &t in &chosen {
            edges.push((v as u32, t));
            stubs.push(v as u32);
            stubs.push(t);
        }
    }
    Graph::from_edges(n, &edges, false)
}

/// Two-block stochastic block model over `2 * block` nodes. Nodes
/// `0..block` form block A, the rest block B; pair probabilities are
/// `p_in_a`, `p_in_b` within blocks and `p_cross` across.
pub fn sbm_two_blocks(
    block: usize,
    p_in_a: f64,
    p_in_b: f64,
    p_cross: f64,
    seed: u64,
) -> Result<Graph> {
    let n = 2 * block;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            let a = (u as usize) < block;
            let b = (v as usize) < block;
            let p = match (a, b) {
                (true, true) => p_in_a,
                (false, false) => p_in_b,
                _ => p_cross,
            };
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges, false)
}

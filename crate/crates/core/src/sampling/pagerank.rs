//! PageRank by power iteration on an undirected graph.
//!
//! Each node spreads its mass evenly over its neighbors; degree-zero nodes
//! spread theirs uniformly over all nodes, and every step teleports a
//! `1 - damping` share uniformly.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq)]
pub struct PageRankVector {
    pub scores: Vec<f64>,
    pub damping: f64,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PageRankConfig {
    pub damping: f64,
    /// Convergence threshold on the L1 change between iterates.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tolerance: 1e-10,
            max_iterations: 1000,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum PageRankError {
    #[error("pagerank of an empty graph")]
    EmptyGraph,
    #[error("damping factor {0} outside (0, 1)")]
    InvalidDamping(f64),
    #[error("pagerank did not converge after {} iterations (L1 change {residual:e})", last.iterations)]
    NotConverged { last: PageRankVector, residual: f64 },
}

pub fn pagerank(graph: &Graph) -> Result<PageRankVector, PageRankError> {
    pagerank_with(graph, &PageRankConfig::default())
}

pub fn pagerank_with(graph: &Graph, config: &PageRankConfig) -> Result<PageRankVector, PageRankError> {
    let n = graph.node_count();
    if n == 0 {
        return Err(PageRankError::EmptyGraph);
    }
    let d = config.damping;
    if !(d > 0.0 && d < 1.0) {
        return Err(PageRankError::InvalidDamping(d));
    }
    let inv_n = 1.0 / n as f64;
    let mut scores = vec![inv_n; n];
    let mut next = vec![0.0; n];
    let mut share = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=config.max_iterations {
        let mut dangling = 0.0;
        for v in graph.nodes() {
            let deg = graph.degree(v);
            if deg == 0 {
                dangling += scores[v];
                share[v] = 0.0;
            } else {
                share[v] = scores[v] / deg as f64;
            }
        }
        let base = (1.0 - d) * inv_n + d * dangling * inv_n;
        residual = 0.0;
        for v in graph.nodes() {
            let inflow: f64 = graph.neighbors(v).iter().map(|&u| share[u]).sum();
            next[v] = base + d * inflow;
            residual += (next[v] - scores[v]).abs();
        }
        std::mem::swap(&mut scores, &mut next);
        if residual < config.tolerance {
            normalize(&mut scores);
            return Ok(PageRankVector {
                scores,
                damping: d,
                iterations: iteration,
            });
        }
    }
    normalize(&mut scores);
    Err(PageRankError::NotConverged {
        last: PageRankVector {
            scores,
            damping: d,
            iterations: config.max_iterations,
        },
        residual,
    })
}

fn normalize(scores: &mut [f64]) {
    let total: f64 = scores.iter().sum();
    scores.iter_mut().for_each(|s| *s /= total);
}

//! The node-budgeted samplers.
//!
//! Every sampler maps `(graph, k, seed)` to a [`Sample`] and draws all of its
//! randomness from a [`SampleRng`] seeded with `seed`, so a sample is a pure
//! function of its inputs. Budgets are always node counts; the two edge
//! samplers stop at the first edge that brings the node set to at least `k`
//! and may overshoot by one.
//!
//! | method | node choice | edges kept |
//! |--------|-------------|------------|
//! | UNS    | uniform without replacement | induced |
//! | WNS    | successive draws ∝ degree | induced |
//! | UES    | endpoints of uniform edges | drawn edges only |
//! | IES    | endpoints of uniform edges | induced |
//! | RWS    | simple random walk | induced |
//! | MHRWS  | Metropolis–Hastings walk (uniform stationary law) | induced |
//! | SS     | snowball waves, last wave truncated at random | induced |
//! | BFS    | FIFO breadth-first order | induced |
//! | PRS    | successive draws ∝ PageRank | induced |
//!
//! Walks that add no new node for `100·k` consecutive steps restart from a
//! fresh node, keeping what they collected. Snowball and BFS restart from a
//! fresh seed when their component is exhausted.

pub mod pagerank;
pub mod walk;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, NodeId, NodeSet};
pub use pagerank::{pagerank, pagerank_with, PageRankConfig, PageRankError, PageRankVector};

/// Generator used for every replicate.
pub type SampleRng = ChaCha8Rng;

/// Consecutive non-growing walk steps tolerated per unit of budget.
pub const STALL_STEPS_PER_NODE: usize = 100;

/// Rejection draws attempted before falling back to scanning for an unused node.
const REJECTION_ATTEMPTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Uns,
    Wns,
    Ues,
    Ies,
    Rws,
    Mhrws,
    Ss,
    Bfs,
    Prs,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Uns,
        Method::Wns,
        Method::Ues,
        Method::Ies,
        Method::Rws,
        Method::Mhrws,
        Method::Ss,
        Method::Bfs,
        Method::Prs,
    ];

    /// The eight methods compared on static networks.
    pub const STATIC: [Method; 8] = [
        Method::Uns,
        Method::Wns,
        Method::Ues,
        Method::Ies,
        Method::Rws,
        Method::Mhrws,
        Method::Ss,
        Method::Bfs,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Uns => "UNS",
            Method::Wns => "WNS",
            Method::Ues => "UES",
            Method::Ies => "IES",
            Method::Rws => "RWS",
            Method::Mhrws => "MHRWS",
            Method::Ss => "SS",
            Method::Bfs => "BFS",
            Method::Prs => "PRS",
        }
    }

    /// Whether samples from this method carry the full induced edge set.
    pub fn is_induced(self) -> bool {
        self != Method::Ues
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown sampling method {0:?}")]
pub struct UnknownMethod(pub String);

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownMethod(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SamplingError {
    #[error("node budget {requested} outside 1..={available}")]
    BudgetOutOfRange { requested: usize, available: usize },
    #[error("{method} needs a graph with at least one edge")]
    NoEdges { method: Method },
    #[error("{method} can reach at most {available} nodes, {requested} requested")]
    InsufficientSupport {
        method: Method,
        requested: usize,
        available: usize,
    },
    #[error(transparent)]
    PageRank(#[from] PageRankError),
}

/// A sampled subgraph with its provenance.
#[derive(Clone, Debug)]
pub struct Sample {
    pub subgraph: Graph,
    /// Sampled node ids in the source graph.
    pub nodes: NodeSet,
    /// Seed or walk-start nodes in source ids, in the order they were used.
    pub seeds: Vec<NodeId>,
    pub method: Method,
    pub target_nodes: usize,
    pub replicate_seed: u64,
    pub induced: bool,
}

impl Sample {
    pub fn actual_nodes(&self) -> usize {
        self.subgraph.node_count()
    }
}

pub fn rng_for(seed: u64) -> SampleRng {
    SampleRng::seed_from_u64(seed)
}

/// Draws one sample, computing PageRank on the fly for PRS.
pub fn sample(graph: &Graph, method: Method, k: usize, seed: u64) -> Result<Sample, SamplingError> {
    Sampler::new(graph).draw(method, k, seed)
}

/// Per-graph sampling context that computes PageRank at most once.
pub struct Sampler<'g> {
    graph: &'g Graph,
    pagerank: OnceLock<Result<PageRankVector, PageRankError>>,
}

impl<'g> Sampler<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self {
            graph,
            pagerank: OnceLock::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn pagerank(&self) -> Result<&PageRankVector, SamplingError> {
        self.pagerank
            .get_or_init(|| pagerank(self.graph))
            .as_ref()
            .map_err(|e| SamplingError::PageRank(e.clone()))
    }

    pub fn draw(&self, method: Method, k: usize, seed: u64) -> Result<Sample, SamplingError> {
        let g = self.graph;
        match method {
            Method::Uns => sample_uns(g, k, seed),
            Method::Wns => sample_wns(g, k, seed),
            Method::Ues => sample_ues(g, k, seed),
            Method::Ies => sample_ies(g, k, seed),
            Method::Rws => sample_rws(g, k, seed),
            Method::Mhrws => sample_mhrws(g, k, seed),
            Method::Ss => sample_ss(g, k, seed),
            Method::Bfs => sample_bfs(g, k, seed),
            Method::Prs => {
                check_budget(g, k)?;
                sample_prs_with(g, self.pagerank()?, k, seed)
            }
        }
    }
}

fn check_budget(g: &Graph, k: usize) -> Result<(), SamplingError> {
    if k == 0 || k > g.node_count() {
        return Err(SamplingError::BudgetOutOfRange {
            requested: k,
            available: g.node_count(),
        });
    }
    Ok(())
}

/// Budget check for methods that can only reach nodes with degree ≥ 1.
/// Returns those nodes.
fn check_edge_support(g: &Graph, method: Method, k: usize) -> Result<Vec<NodeId>, SamplingError> {
    check_budget(g, k)?;
    if g.edge_count() == 0 {
        return Err(SamplingError::NoEdges { method });
    }
    let support: Vec<NodeId> = g.nodes().filter(|&v| g.degree(v) > 0).collect();
    if k > support.len() {
        return Err(SamplingError::InsufficientSupport {
            method,
            requested: k,
            available: support.len(),
        });
    }
    Ok(support)
}

fn finish(g: &Graph, method: Method, k: usize, seed: u64, nodes: Vec<NodeId>, seeds: Vec<NodeId>) -> Sample {
    let nodes = NodeSet::from_unsorted(nodes);
    Sample {
        subgraph: g.induced_subgraph(&nodes),
        nodes,
        seeds,
        method,
        target_nodes: k,
        replicate_seed: seed,
        induced: true,
    }
}

/// Uniform choice from `pool` among nodes not yet `taken`, or `None` if all are.
fn pick_unused<R: Rng + ?Sized>(rng: &mut R, pool: &[NodeId], taken: &[bool]) -> Option<NodeId> {
    if pool.is_empty() {
        return None;
    }
    for _ in 0..REJECTION_ATTEMPTS {
        let v = pool[rng.random_range(0..pool.len())];
        if !taken[v] {
            return Some(v);
        }
    }
    let free: Vec<NodeId> = pool.iter().copied().filter(|&v| !taken[v]).collect();
    if free.is_empty() {
        None
    } else {
        Some(free[rng.random_range(0..free.len())])
    }
}

/// `k` distinct indices by successive draws proportional to `weights`,
/// realised as the `k` smallest exponential keys `-ln(U)/w`. Zero weights are
/// never chosen; the caller guarantees at least `k` positive weights.
pub fn weighted_without_replacement<R: Rng + ?Sized>(weights: &[f64], k: usize, rng: &mut R) -> Vec<usize> {
    let mut keyed: Vec<(f64, usize)> = weights
        .iter()
        .enumerate()
        .filter(|&(_, &w)| w > 0.0)
        .map(|(i, &w)| {
            let u = 1.0 - rng.random::<f64>();
            (-u.ln() / w, i)
        })
        .collect();
    assert!(keyed.len() >= k, "fewer positive weights than requested draws");
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    keyed.into_iter().take(k).map(|(_, i)| i).collect()
}

pub fn sample_uns(g: &Graph, k: usize, seed: u64) -> Result<Sample, SamplingError> {
    check_budget(g, k)?;
    let mut rng = rng_for(seed);
    let nodes = index::sample(&mut rng, g.node_count(), k).into_vec();
    Ok(finish(g, Method::Uns, k, seed, nodes, Vec::new()))
}

pub fn sample_wns(g: &Graph, k: usize, seed: u64) -> Result<Sample, SamplingError> {
    check_edge_support(g, Method::Wns, k)?;
    let mut rng = rng_for(seed);
    let weights: Vec<f64> = g.nodes().map(|v| g.degree(v) as f64).collect();
    let nodes = weighted_without_replacement(&weights, k, &mut rng);
    Ok(finish(g, Method::Wns, k, seed, nodes, Vec::new()))
}

pub fn sample_prs(g: &Graph, k: usize, seed: u64) -> Result<Sample, SamplingError> {
    check_budget(g, k)?;
    sample_prs_with(g, &pagerank(g)?, k, seed)
}

/// PRS with a precomputed PageRank vector for `g`.
pub fn sample_prs_with(g: &Graph, scores: &PageRankVector, k: usize, seed: u64) -> Result<Sample, SamplingError> {
    check_budget(g, k)?;
    assert_eq!(
        scores.scores.len(),
        g.node_count(),
        "PageRank vector belongs to another graph"
    );
    let mut rng = rng_for(seed);
    let nodes = weighted_without_replacement(&scores.scores, k, &mut rng);
    Ok(finish(g, Method::Prs, k, seed, nodes, Vec::new()))
}

/// Draws edges uniformly without replacement until their endpoints cover `k` nodes.
fn grow_by_edges<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> (Vec<NodeId>, Vec<(NodeId, NodeId)>) {
    let edges = g.edges();
    let mut order: Vec<u32> = (0..edges.len() as u32).collect();
    let mut taken = vec![false; g.node_count()];
    let mut nodes = Vec::with_capacity(k + 1);
    let mut drawn = Vec::new();
    let mut i = 0;
    while nodes.len() < k {
        let j = rng.random_range(i..order.len());
        order.swap(i, j);
        let (u, v) = edges[order[i] as usize];
        i += 1;
        for w in [u, v] {
            if !taken[w] {
                taken[w] = true;
                nodes.push(w);
            }
        }
        drawn.push((u, v));
    }
    (nodes, drawn)
}

pub fn sample_ues(g: &Graph, k: usize, seed: u64) -> Result<Sample, SamplingError> {
    check_edge_support(g, Method::Ues, k)?;
    let mut rng = rng_for(seed);
    let (nodes, drawn) = grow_by_edges(g, k, &mut rng);
    let nodes = NodeSet::from_unsorted(nodes);
    Ok(Sample {
        subgraph: g.edge_subgraph(&nodes, &drawn),
        nodes,
        seeds: Vec::new(),
        method: Method::Ues,
        target_nodes: k,
        replicate_seed: seed,
        induced: false,
    })
}

pub fn sample_ies(g: &Graph, k: usize, seed: u64) -> Result<Sample, SamplingError> {
    check_edge_support(g, Method::Ies, k)?;
    let mut rng = rng_for(seed);
    let (nodes, _) = grow_by_edges(g, k, &mut rng);
    Ok(finish(g, Method::Ies, k, seed, nodes, Vec::new()))
}

fn walk_sample<F>(g: &Graph, method: Method, k: usize, seed: u64, step: F) -> Result<Sample, SamplingError>
where
    F: Fn(&Graph, NodeId, &mut SampleRng) -> NodeId,
{
    let support = check_edge_support(g, method, k)?;
    let mut rng = rng_for(seed);
    let mut taken = vec![false; g.node_count()];
    let mut nodes = Vec::with_capacity(k);
    let mut seeds = Vec::new();
    let stall_limit = STALL_STEPS_PER_NODE * k;

    let mut current = support[rng.random_range(0..support.len())];
    taken[current] = true;
    nodes.push(current);
    seeds.push(current);
    let mut stalled = 0;
    while nodes.len() < k {
        if stalled >= stall_limit {
            // Support has ≥ k nodes and fewer than k are taken.
            current = pick_unused(&mut rng, &support, &taken).expect("unvisited support node");
            taken[current] = true;
            nodes.push(current);
            seeds.push(current);
            stalled = 0;
            continue;
        }
        current = step(g, current, &mut rng);
        if taken[current] {
            stalled += 1;
        } else {
            taken[current] = true;
            nodes.push(current);
            stalled = 0;
        }
    }
    Ok(finish(g, method, k, seed, nodes, seeds))
}

pub fn sample_rws(g: &Graph, k: usize, seed: u64) -> Result<Sample, SamplingError> {
    walk_sample(g, Method::Rws, k, seed, walk::simple_step)
}

pub fn sample_mhrws(g: &Graph, k: usize, seed: u64) -> Result<Sample, SamplingError> {
    walk_sample(g, Method::Mhrws, k, seed, walk::metropolis_step)
}

pub fn sample_ss(g: &Graph, k: usize, seed: u64) -> Result<Sample, SamplingError> {
    check_budget(g, k)?;
    let mut rng = rng_for(seed);
    let all: Vec<NodeId> = g.nodes().collect();
    let mut taken = vec![false; g.node_count()];
    let mut nodes = Vec::with_capacity(k);
    let mut seeds = Vec::new();
    while nodes.len() < k {
        let root = pick_unused(&mut rng, &all, &taken).expect("k ≤ node count");
        taken[root] = true;
        nodes.push(root);
        seeds.push(root);
        let mut wave = vec![root];
        while nodes.len() < k {
            let mut next: Vec<NodeId> = wave
                .iter()
                .flat_map(|&v| g.neighbors(v).iter().copied())
                .filter(|&w| !taken[w])
                .collect();
            next.sort_unstable();
            next.dedup();
            if next.is_empty() {
                break;
            }
            let room = k - nodes.len();
            if next.len() > room {
                next = index::sample(&mut rng, next.len(), room)
                    .into_iter()
                    .map(|i| next[i])
                    .collect();
            }
            for &w in &next {
                taken[w] = true;
                nodes.push(w);
            }
            wave = next;
        }
    }
    Ok(finish(g, Method::Ss, k, seed, nodes, seeds))
}

pub fn sample_bfs(g: &Graph, k: usize, seed: u64) -> Result<Sample, SamplingError> {
    check_budget(g, k)?;
    let mut rng = rng_for(seed);
    let all: Vec<NodeId> = g.nodes().collect();
    let mut enqueued = vec![false; g.node_count()];
    let mut nodes = Vec::with_capacity(k);
    let mut seeds = Vec::new();
    let mut queue = VecDeque::new();
    'outer: while nodes.len() < k {
        // The queue is empty here, so enqueued == sampled.
        let root = pick_unused(&mut rng, &all, &enqueued).expect("k ≤ node count");
        enqueued[root] = true;
        queue.push_back(root);
        seeds.push(root);
        while let Some(v) = queue.pop_front() {
            nodes.push(v);
            if nodes.len() == k {
                break 'outer;
            }
            for &w in g.neighbors(v) {
                if !enqueued[w] {
                    enqueued[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(finish(g, Method::Bfs, k, seed, nodes, seeds))
}

//! Single-step transition rules for the simple and Metropolis–Hastings walks,
//! exposed both as step functions for the samplers and as unbounded iterators.

use rand::Rng;

use crate::graph::{Graph, NodeId};

/// Moves to a uniformly chosen neighbor. `current` must have degree ≥ 1.
pub fn simple_step<R: Rng + ?Sized>(graph: &Graph, current: NodeId, rng: &mut R) -> NodeId {
    let neighbors = graph.neighbors(current);
    neighbors[rng.random_range(0..neighbors.len())]
}

/// Proposes a uniform neighbor `y` and accepts it with probability
/// `min(1, deg(x) / deg(y))`; otherwise stays at `x`.
pub fn metropolis_step<R: Rng + ?Sized>(graph: &Graph, current: NodeId, rng: &mut R) -> NodeId {
    let proposal = simple_step(graph, current, rng);
    let deg_x = graph.degree(current);
    let deg_y = graph.degree(proposal);
    if deg_y <= deg_x || rng.random::<f64>() * (deg_y as f64) < deg_x as f64 {
        proposal
    } else {
        current
    }
}

/// Node sequence of a simple random walk (excluding the start node).
pub struct RandomWalk<'g, R> {
    graph: &'g Graph,
    rng: R,
    current: NodeId,
}

impl<'g, R: Rng> RandomWalk<'g, R> {
    pub fn new(graph: &'g Graph, start: NodeId, rng: R) -> Self {
        assert!(graph.degree(start) > 0, "walk start must have a neighbor");
        Self {
            graph,
            rng,
            current: start,
        }
    }
}

impl<R: Rng> Iterator for RandomWalk<'_, R> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        self.current = simple_step(self.graph, self.current, &mut self.rng);
        Some(self.current)
    }
}

/// Positions of a Metropolis–Hastings walk after each step (repeats on rejection).
pub struct MetropolisWalk<'g, R> {
    graph: &'g Graph,
    rng: R,
    current: NodeId,
}

impl<'g, R: Rng> MetropolisWalk<'g, R> {
    pub fn new(graph: &'g Graph, start: NodeId, rng: R) -> Self {
        assert!(graph.degree(start) > 0, "walk start must have a neighbor");
        Self {
            graph,
            rng,
            current: start,
        }
    }
}

impl<R: Rng> Iterator for MetropolisWalk<'_, R> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        self.current = metropolis_step(self.graph, self.current, &mut self.rng);
        Some(self.current)
    }
}

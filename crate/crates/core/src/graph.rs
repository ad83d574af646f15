//! Immutable simple undirected graphs.
//!
//! Nodes are dense ids `0..n` assigned in ascending order of their original
//! dataset label, so every [`Graph`] keeps its labels sorted and label lookups
//! are a binary search. Adjacency is stored in compressed sparse row form with
//! each neighbor list sorted, which makes every traversal order (and therefore
//! every seeded sampler) reproducible.

use std::collections::VecDeque;

use thiserror::Error;

/// Dense internal node id.
pub type NodeId = usize;

/// Original integer label of a node as it appears in a dataset.
pub type Label = u64;

/// Distance reported by [`bfs_distances`] for nodes not reachable from the source.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("node id {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: NodeId, node_count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<Label>,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId)>,
}

impl Graph {
    /// Builds a simple graph from raw labelled pairs.
    ///
    /// Self-loops are dropped, duplicates and reversed duplicates merged.
    /// Only labels incident to at least one remaining edge become nodes.
    pub fn from_edges(raw_edges: &[(Label, Label)]) -> Self {
        let mut labels: Vec<Label> = raw_edges
            .iter()
            .filter(|(u, v)| u != v)
            .flat_map(|&(u, v)| [u, v])
            .collect();
        labels.sort_unstable();
        labels.dedup();
        Self::over_labels(labels, raw_edges)
    }

    /// Builds a simple graph on exactly the given label set.
    ///
    /// Every label becomes a node (isolates retained); edges with an endpoint
    /// outside the set are ignored. Duplicate labels are merged.
    pub fn from_edges_over(labels: &[Label], raw_edges: &[(Label, Label)]) -> Self {
        let mut labels = labels.to_vec();
        labels.sort_unstable();
        labels.dedup();
        Self::over_labels(labels, raw_edges)
    }

    fn over_labels(labels: Vec<Label>, raw_edges: &[(Label, Label)]) -> Self {
        let mut edges: Vec<(NodeId, NodeId)> = raw_edges
            .iter()
            .filter(|(u, v)| u != v)
            .filter_map(|&(u, v)| {
                let a = labels.binary_search(&u).ok()?;
                let b = labels.binary_search(&v).ok()?;
                Some((a.min(b), a.max(b)))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Self::from_canonical(labels, edges)
    }

    /// `edges` must be sorted, deduplicated, with `u < v` and ids `< labels.len()`.
    pub(crate) fn from_canonical(labels: Vec<Label>, edges: Vec<(NodeId, NodeId)>) -> Self {
        let n = labels.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0; 2 * edges.len()];
        // With edges sorted by (u, v), each list receives its lower neighbors
        // (ascending) before its higher ones (ascending), so lists come out sorted.
        for &(u, v) in &edges {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        for v in 0..n {
            debug_assert!(targets[offsets[v]..offsets[v + 1]].windows(2).all(|w| w[0] < w[1]));
        }
        Self {
            labels,
            offsets,
            targets,
            edges,
        }
    }

    pub fn empty() -> Self {
        Self::from_canonical(Vec::new(), Vec::new())
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Original labels, ascending and indexed by node id.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, node: NodeId) -> Label {
        self.labels[node]
    }

    pub fn node_of(&self, label: Label) -> Option<NodeId> {
        self.labels.binary_search(&label).ok()
    }

    /// Sorted neighbor ids of `node`.
    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Edges as label pairs `(a, b)` with `a < b`, sorted.
    pub fn labeled_edges(&self) -> Vec<(Label, Label)> {
        self.edges
            .iter()
            .map(|&(u, v)| (self.labels[u], self.labels[v]))
            .collect()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count()
    }

    /// Subgraph on `nodes` with every edge of `self` joining two members.
    ///
    /// Members keep their labels and are re-indexed in ascending id order.
    pub fn induced_subgraph(&self, nodes: &NodeSet) -> Graph {
        let members = nodes.as_slice();
        let mut position = vec![usize::MAX; self.node_count()];
        for (i, &v) in members.iter().enumerate() {
            position[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in members.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = position[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        let labels = members.iter().map(|&v| self.labels[v]).collect();
        Graph::from_canonical(labels, edges)
    }

    /// Subgraph on `nodes` containing only the listed source edges.
    ///
    /// Every edge must join two members of `nodes`.
    pub(crate) fn edge_subgraph(&self, nodes: &NodeSet, chosen: &[(NodeId, NodeId)]) -> Graph {
        let members = nodes.as_slice();
        let index = |v: NodeId| members.binary_search(&v).expect("edge endpoint outside node set");
        let mut edges: Vec<(NodeId, NodeId)> = chosen
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (index(u), index(v));
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let labels = members.iter().map(|&v| self.labels[v]).collect();
        Graph::from_canonical(labels, edges)
    }
}

/// A sorted, duplicate-free set of node ids valid for some graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NodeSet {
    members: Vec<NodeId>,
}

impl NodeSet {
    pub fn new(graph: &Graph, ids: impl IntoIterator<Item = NodeId>) -> Result<Self, GraphError> {
        let mut members: Vec<NodeId> = ids.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&max) = members.last() {
            if max >= graph.node_count() {
                return Err(GraphError::NodeOutOfRange {
                    node: max,
                    node_count: graph.node_count(),
                });
            }
        }
        Ok(Self { members })
    }

    /// Every node of `graph`.
    pub fn all(graph: &Graph) -> Self {
        Self {
            members: graph.nodes().collect(),
        }
    }

    /// Callers guarantee the ids are in range for the graph they use this set with.
    pub(crate) fn from_unsorted(mut members: Vec<NodeId>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.members.binary_search(&node).is_ok()
    }
}

/// Connected components, largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    component_id: Vec<usize>,
    sizes: Vec<usize>,
}

impl ComponentPartition {
    pub fn component_of(&self, node: NodeId) -> usize {
        self.component_id[node]
    }

    pub fn component_ids(&self) -> &[usize] {
        &self.component_id
    }

    /// Component sizes in descending order; index = component id.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn largest_size(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Members of component `id`, ascending.
    pub fn members(&self, id: usize) -> Vec<NodeId> {
        self.component_id
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == id)
            .map(|(v, _)| v)
            .collect()
    }
}

/// Partitions `graph` by reachability.
///
/// Component 0 is the largest; ties go to the component containing the
/// smaller node id.
pub fn connected_components(graph: &Graph) -> ComponentPartition {
    let n = graph.node_count();
    let mut discovered = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for root in graph.nodes() {
        if discovered[root] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        discovered[root] = id;
        queue.push_back(root);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in graph.neighbors(v) {
                if discovered[w] == usize::MAX {
                    discovered[w] = id;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    // Discovery order follows the smallest member id, so a stable sort by
    // descending size gives the tie-break for free.
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]));
    let mut rank = vec![0; sizes.len()];
    for (new_id, &old_id) in order.iter().enumerate() {
        rank[old_id] = new_id;
    }
    ComponentPartition {
        component_id: discovered.into_iter().map(|c| rank[c]).collect(),
        sizes: order.iter().map(|&c| sizes[c]).collect(),
    }
}

/// Hop distance from `source` to every node, [`UNREACHABLE`] where there is no path.
pub fn bfs_distances(graph: &Graph, source: NodeId) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; graph.node_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for &w in graph.neighbors(v) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

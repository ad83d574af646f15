//! Structural metrics of a single graph and of snapshot sequences.
//!
//! Conventions: local clustering is 0 for nodes of degree < 2; the average
//! shortest path is taken over ordered pairs inside the largest component;
//! the s-metric counts each undirected edge once. Metrics that are undefined
//! for a graph are reported as errors here and as `None` in [`MetricReport`].

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{bfs_distances, connected_components, Graph, UNREACHABLE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{metric} undefined: {reason}")]
pub struct MetricError {
    pub metric: Metric,
    pub reason: &'static str,
}

impl MetricError {
    fn new(metric: Metric, reason: &'static str) -> Self {
        Self { metric, reason }
    }
}

/// Names used in reports and CSV output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    AvgDegree,
    AvgClustering,
    GlobalClustering,
    LccRatio,
    AvgShortestPath,
    Density,
    SMetric,
    EdgePercentage,
}

impl Metric {
    /// The seven metrics in a [`MetricReport`], in column order.
    pub const REPORT: [Metric; 7] = [
        Metric::AvgDegree,
        Metric::AvgClustering,
        Metric::GlobalClustering,
        Metric::LccRatio,
        Metric::AvgShortestPath,
        Metric::Density,
        Metric::SMetric,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::AvgDegree => "avg_degree",
            Metric::AvgClustering => "avg_clustering",
            Metric::GlobalClustering => "global_clustering",
            Metric::LccRatio => "lcc_ratio",
            Metric::AvgShortestPath => "avg_shortest_path",
            Metric::Density => "density",
            Metric::SMetric => "s_metric",
            Metric::EdgePercentage => "edge_percentage",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn require_nodes(g: &Graph, metric: Metric) -> Result<(), MetricError> {
    if g.is_empty() {
        Err(MetricError::new(metric, "graph has no nodes"))
    } else {
        Ok(())
    }
}

/// Mean degree, `2|E| / n`.
pub fn average_degree(g: &Graph) -> Result<f64, MetricError> {
    require_nodes(g, Metric::AvgDegree)?;
    Ok(2.0 * g.edge_count() as f64 / g.node_count() as f64)
}

/// Number of triangles through each node.
pub fn triangles_per_node(g: &Graph) -> Vec<u64> {
    let mut count = vec![0u64; g.node_count()];
    for &(u, v) in g.edges() {
        // Only third vertices above v, so each triangle u < v < w is seen once.
        let nu = g.neighbors(u);
        let nv = g.neighbors(v);
        let (mut i, mut j) = (nu.partition_point(|&x| x <= v), nv.partition_point(|&x| x <= v));
        while i < nu.len() && j < nv.len() {
            match nu[i].cmp(&nv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let w = nu[i];
                    count[u] += 1;
                    count[v] += 1;
                    count[w] += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    count
}

pub fn triangle_count(g: &Graph) -> u64 {
    triangles_per_node(g).iter().sum::<u64>() / 3
}

fn pairs(degree: usize) -> u64 {
    let d = degree as u64;
    d * d.saturating_sub(1) / 2
}

/// Mean of local clustering coefficients.
pub fn average_clustering(g: &Graph) -> Result<f64, MetricError> {
    require_nodes(g, Metric::AvgClustering)?;
    let tri = triangles_per_node(g);
    let total: f64 = g
        .nodes()
        .map(|v| match pairs(g.degree(v)) {
            0 => 0.0,
            p => tri[v] as f64 / p as f64,
        })
        .sum();
    Ok(total / g.node_count() as f64)
}

/// Transitivity: `3 × triangles / connected triples`, 0 without triples.
pub fn global_clustering(g: &Graph) -> Result<f64, MetricError> {
    require_nodes(g, Metric::GlobalClustering)?;
    let triples: u64 = g.nodes().map(|v| pairs(g.degree(v))).sum();
    if triples == 0 {
        return Ok(0.0);
    }
    let closed: u64 = triangles_per_node(g).iter().sum();
    Ok(closed as f64 / triples as f64)
}

pub fn largest_component_ratio(g: &Graph) -> Result<f64, MetricError> {
    require_nodes(g, Metric::LccRatio)?;
    Ok(connected_components(g).largest_size() as f64 / g.node_count() as f64)
}

/// Mean hop distance over ordered pairs of distinct nodes in the largest component.
pub fn avg_shortest_path_lcc(g: &Graph) -> Result<f64, MetricError> {
    let parts = connected_components(g);
    let size = parts.largest_size();
    if size < 2 {
        return Err(MetricError::new(
            Metric::AvgShortestPath,
            "largest component has fewer than 2 nodes",
        ));
    }
    let members = parts.members(0);
    // Integer sums keep the parallel reduction order-independent.
    let total: u64 = members
        .par_iter()
        .map(|&source| {
            bfs_distances(g, source)
                .into_iter()
                .filter(|&d| d != UNREACHABLE)
                .map(u64::from)
                .sum::<u64>()
        })
        .sum();
    let ordered_pairs = (size as u64) * (size as u64 - 1);
    Ok(total as f64 / ordered_pairs as f64)
}

/// `Σ deg(u)·deg(v)` over undirected edges, each counted once.
pub fn s_metric(g: &Graph) -> u64 {
    g.edges().iter().map(|&(u, v)| (g.degree(u) * g.degree(v)) as u64).sum()
}

/// `2|E| / (n(n − 1))`.
pub fn density(g: &Graph) -> Result<f64, MetricError> {
    let n = g.node_count();
    if n < 2 {
        return Err(MetricError::new(Metric::Density, "fewer than 2 nodes"));
    }
    Ok(2.0 * g.edge_count() as f64 / (n as f64 * (n as f64 - 1.0)))
}

/// Each count divided by the first one.
pub fn edge_percentage(edge_counts: &[usize]) -> Result<Vec<f64>, MetricError> {
    match edge_counts.first() {
        Some(&first) if first > 0 => Ok(edge_counts.iter().map(|&c| c as f64 / first as f64).collect()),
        _ => Err(MetricError::new(Metric::EdgePercentage, "first snapshot has no edges")),
    }
}

/// All seven metrics of one graph; undefined entries are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport {
    pub avg_degree: Option<f64>,
    pub avg_clustering: Option<f64>,
    pub global_clustering: Option<f64>,
    pub lcc_ratio: Option<f64>,
    pub avg_shortest_path: Option<f64>,
    pub density: Option<f64>,
    pub s_metric: Option<u64>,
}

impl MetricReport {
    pub fn get(&self, metric: Metric) -> Option<f64> {
        match metric {
            Metric::AvgDegree => self.avg_degree,
            Metric::AvgClustering => self.avg_clustering,
            Metric::GlobalClustering => self.global_clustering,
            Metric::LccRatio => self.lcc_ratio,
            Metric::AvgShortestPath => self.avg_shortest_path,
            Metric::Density => self.density,
            Metric::SMetric => self.s_metric.map(|s| s as f64),
            Metric::EdgePercentage => None,
        }
    }

    /// `(metric, value)` pairs in [`Metric::REPORT`] order.
    pub fn entries(&self) -> impl Iterator<Item = (Metric, Option<f64>)> + '_ {
        Metric::REPORT.into_iter().map(|m| (m, self.get(m)))
    }
}

pub fn full_report(g: &Graph) -> MetricReport {
    MetricReport {
        avg_degree: average_degree(g).ok(),
        avg_clustering: average_clustering(g).ok(),
        global_clustering: global_clustering(g).ok(),
        lcc_ratio: largest_component_ratio(g).ok(),
        avg_shortest_path: avg_shortest_path_lcc(g).ok(),
        density: density(g).ok(),
        s_metric: (!g.is_empty()).then(|| s_metric(g)),
    }
}

/// Per-snapshot metrics of one snapshot sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct TemporalMetricSeries {
    pub edge_counts: Vec<usize>,
    pub avg_degree: Vec<Option<f64>>,
    pub avg_clustering: Vec<Option<f64>>,
    pub global_clustering: Vec<Option<f64>>,
    /// `None` when the first snapshot has no edges.
    pub edge_percentage: Option<Vec<f64>>,
}

pub fn temporal_series(snapshots: &[Graph]) -> TemporalMetricSeries {
    let edge_counts: Vec<usize> = snapshots.iter().map(Graph::edge_count).collect();
    TemporalMetricSeries {
        avg_degree: snapshots.iter().map(|g| average_degree(g).ok()).collect(),
        avg_clustering: snapshots.iter().map(|g| average_clustering(g).ok()).collect(),
        global_clustering: snapshots.iter().map(|g| global_clustering(g).ok()).collect(),
        edge_percentage: edge_percentage(&edge_counts).ok(),
        edge_counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(&[(0, 1), (1, 2), (0, 2)])
    }

    fn path(n: u64) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(&edges)
    }

    fn star(leaves: u64) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
        Graph::from_edges(&edges)
    }

    #[test]
    fn triangle_report() {
        let r = full_report(&triangle());
        assert_eq!(
            r,
            MetricReport {
                avg_degree: Some(2.0),
                avg_clustering: Some(1.0),
                global_clustering: Some(1.0),
                lcc_ratio: Some(1.0),
                avg_shortest_path: Some(1.0),
                density: Some(1.0),
                s_metric: Some(12),
            }
        );
    }

    #[test]
    fn empty_report_is_all_absent() {
        let r = full_report(&Graph::empty());
        assert!(r.entries().all(|(_, v)| v.is_none()));
    }

    #[test]
    fn empty_graph_errors() {
        let g = Graph::empty();
        assert!(average_degree(&g).is_err());
        assert!(average_clustering(&g).is_err());
        assert!(avg_shortest_path_lcc(&g).is_err());
    }

    #[test]
    fn star_has_no_clustering() {
        assert_eq!(average_clustering(&star(4)).unwrap(), 0.0);
        assert_eq!(global_clustering(&star(4)).unwrap(), 0.0);
    }

    #[test]
    fn path3_values() {
        let g = path(3);
        assert_eq!(global_clustering(&g).unwrap(), 0.0);
        assert_eq!(s_metric(&g), 4);
        assert!((density(&g).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn path4_shortest_path() {
        let a = avg_shortest_path_lcc(&path(4)).unwrap();
        assert!((a - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn lcc_ratio_two_triangles_and_isolate() {
        let g = Graph::from_edges_over(
            &[0, 1, 2, 3, 4, 5, 6],
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
        );
        assert!((largest_component_ratio(&g).unwrap() - 3.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn shortest_path_undefined_without_edges() {
        let g = Graph::from_edges_over(&[1, 2], &[]);
        assert!(avg_shortest_path_lcc(&g).is_err());
        assert_eq!(full_report(&g).avg_shortest_path, None);
        assert_eq!(full_report(&g).density, Some(0.0));
    }

    #[test]
    fn single_node_density_undefined() {
        let g = Graph::from_edges_over(&[1], &[]);
        assert!(density(&g).is_err());
        assert_eq!(average_degree(&g).unwrap(), 0.0);
    }

    #[test]
    fn clustering_mixed_graph() {
        // Triangle 0-1-2 with pendant 3 on node 2.
        let g = Graph::from_edges(&[(0, 1), (1, 2), (0, 2), (2, 3)]);
        // c = [1, 1, 1/3, 0]
        assert!((average_clustering(&g).unwrap() - (7.0 / 3.0) / 4.0).abs() < 1e-15);
        // 3 closed / (1 + 1 + 3) triples
        assert!((global_clustering(&g).unwrap() - 3.0 / 5.0).abs() < 1e-15);
        assert_eq!(triangle_count(&g), 1);
    }

    #[test]
    fn edge_percentage_cases() {
        assert_eq!(edge_percentage(&[50, 25]).unwrap(), vec![1.0, 0.5]);
        assert_eq!(edge_percentage(&[7, 7, 7]).unwrap(), vec![1.0; 3]);
        assert!(edge_percentage(&[0, 3]).is_err());
        assert!(edge_percentage(&[]).is_err());
    }

    #[test]
    fn temporal_series_of_two_snapshots() {
        let labels = [1, 2, 3, 4];
        let snaps = [
            Graph::from_edges_over(&labels, &[(1, 2), (2, 3), (1, 3), (3, 4)]),
            Graph::from_edges_over(&labels, &[(1, 2), (3, 4)]),
        ];
        let s = temporal_series(&snaps);
        assert_eq!(s.edge_counts, vec![4, 2]);
        assert_eq!(s.avg_degree, vec![Some(2.0), Some(1.0)]);
        assert_eq!(s.edge_percentage, Some(vec![1.0, 0.5]));
        assert_eq!(s.global_clustering[1], Some(0.0));
    }
}

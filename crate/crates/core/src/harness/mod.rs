//! Monte Carlo experiment harness.
//!
//! Each experiment expands its configuration into independent replicate jobs,
//! seeds each job with [`derive_seed`], runs them in parallel and collects the
//! results back in `(method, size, replicate)` order, so output files depend
//! only on the configuration.
//!
//! Output files (in `output_dir`):
//!
//! * `<kind>_raw.csv`: `experiment,method,size,replicate,metric,value`
//! * `<kind>_summary.csv`: `experiment,method,size,metric,mean,std,min,q1,median,q3,max,count`
//! * `<kind>_failures.csv`: `experiment,method,size,replicate,error`
//! * `clt_fit.csv`: `method,size,replicates_group,metric,mean,std,skewness,count`
//! * `temporal_raw.csv`: `method,replicates_group,replicate,t,metric,value`
//! * `temporal_summary.csv`: `method,replicates_group,t,metric,mean,std,min,q1,median,q3,max,count`
//! * `temporal_snapshots.csv`: per-snapshot sizes against the reference edge counts
//!
//! Reference rows computed on the unsampled network use method `ORIGINAL`.
//! Undefined metric values are written as empty cells; replicates whose
//! sampler failed are written as `FAILED` with the error in the failures file.

pub mod config;
pub mod output;
pub mod seed;
pub mod stats;

use std::collections::HashMap;
use std::path::PathBuf;

use rayon::prelude::*;
use thiserror::Error;

pub use config::{ExperimentConfig, ExperimentKind};
pub use seed::derive_seed;
pub use stats::Summary;

use crate::graph::Graph;
use crate::ingest::{self, IngestError, TemporalMultiplexGraph};
use crate::metrics::{self, Metric};
use crate::sampling::{Method, Sampler};

/// Method name of reference rows.
pub const ORIGINAL: &str = "ORIGINAL";

/// Snapshot edge counts the temporal preprocessing is expected to reproduce.
pub const REFERENCE_SNAPSHOT_EDGES: [usize; 5] = [382, 250, 188, 119, 69];

/// Largest relative snapshot edge-count deviation accepted conditionally.
pub const SNAPSHOT_DEVIATION_TOLERANCE: f64 = 0.10;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("dataset error: {0}")]
    Dataset(#[from] IngestError),
    #[error("experiment failed: {0}")]
    Experiment(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 1,
            HarnessError::Dataset(_) => 2,
            HarnessError::Experiment(_) | HarnessError::Io { .. } | HarnessError::Csv(_) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Number(f64),
    Absent,
    Failed,
}

impl Value {
    pub fn number(self) -> Option<f64> {
        match self {
            Value::Number(v) => Some(v),
            _ => None,
        }
    }
}

impl From<Option<f64>> for Value {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Value::Absent, Value::Number)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RawRow {
    pub experiment: String,
    pub method: String,
    pub size: usize,
    pub replicate: usize,
    pub metric: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub experiment: String,
    pub method: String,
    pub size: usize,
    pub metric: String,
    /// `None` when no replicate produced a value.
    pub summary: Option<Summary>,
}

impl SummaryRow {
    pub fn count(&self) -> usize {
        self.summary.map_or(0, |s| s.count)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureRow {
    pub experiment: String,
    pub method: String,
    pub size: usize,
    pub replicate: usize,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TemporalRow {
    pub method: String,
    pub replicates_group: usize,
    pub replicate: usize,
    pub t: usize,
    pub metric: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TemporalSummaryRow {
    pub method: String,
    pub replicates_group: usize,
    pub t: usize,
    pub metric: String,
    pub summary: Option<Summary>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CltFit {
    pub method: String,
    pub size: usize,
    pub replicates_group: usize,
    pub metric: String,
    pub mean: Option<f64>,
    pub std: Option<f64>,
    pub skewness: Option<f64>,
    pub count: usize,
}

/// One snapshot of the preprocessed temporal network next to its expected size.
#[derive(Clone, Debug, PartialEq)]
pub struct SnapshotCheck {
    pub t: usize,
    pub nodes: usize,
    pub edges: usize,
    pub reference_edges: Option<usize>,
    pub avg_degree: Option<f64>,
    pub avg_clustering: Option<f64>,
    pub global_clustering: Option<f64>,
}

impl SnapshotCheck {
    /// Relative edge-count deviation from the reference, if there is one.
    pub fn deviation(&self) -> Option<f64> {
        self.reference_edges
            .map(|r| (self.edges as f64 - r as f64).abs() / r as f64)
    }
}

pub fn snapshot_checks(multiplex: &TemporalMultiplexGraph) -> Vec<SnapshotCheck> {
    multiplex
        .snapshots()
        .iter()
        .enumerate()
        .map(|(t, g)| SnapshotCheck {
            t,
            nodes: g.node_count(),
            edges: g.edge_count(),
            reference_edges: REFERENCE_SNAPSHOT_EDGES.get(t).copied(),
            avg_degree: metrics::average_degree(g).ok(),
            avg_clustering: metrics::average_clustering(g).ok(),
            global_clustering: metrics::global_clustering(g).ok(),
        })
        .collect()
}

/// Groups raw rows by `(experiment, method, size, metric)` in first-seen order.
/// Only numeric values contribute.
pub fn summarize(raw: &[RawRow]) -> Vec<SummaryRow> {
    let mut index: HashMap<(&str, &str, usize, &str), usize> = HashMap::new();
    let mut groups: Vec<(&RawRow, Vec<f64>)> = Vec::new();
    for row in raw {
        let key = (
            row.experiment.as_str(),
            row.method.as_str(),
            row.size,
            row.metric.as_str(),
        );
        let slot = *index.entry(key).or_insert_with(|| {
            groups.push((row, Vec::new()));
            groups.len() - 1
        });
        if let Value::Number(v) = row.value {
            groups[slot].1.push(v);
        }
    }
    groups
        .into_iter()
        .map(|(first, values)| SummaryRow {
            experiment: first.experiment.clone(),
            method: first.method.clone(),
            size: first.size,
            metric: first.metric.clone(),
            summary: stats::summarize_values(&values),
        })
        .collect()
}

pub fn summarize_temporal(raw: &[TemporalRow]) -> Vec<TemporalSummaryRow> {
    let mut index: HashMap<(&str, usize, usize, &str), usize> = HashMap::new();
    let mut groups: Vec<(&TemporalRow, Vec<f64>)> = Vec::new();
    for row in raw {
        let key = (row.method.as_str(), row.replicates_group, row.t, row.metric.as_str());
        let slot = *index.entry(key).or_insert_with(|| {
            groups.push((row, Vec::new()));
            groups.len() - 1
        });
        if let Value::Number(v) = row.value {
            groups[slot].1.push(v);
        }
    }
    groups
        .into_iter()
        .map(|(first, values)| TemporalSummaryRow {
            method: first.method.clone(),
            replicates_group: first.replicates_group,
            t: first.t,
            metric: first.metric.clone(),
            summary: stats::summarize_values(&values),
        })
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct StaticRun {
    pub raw: Vec<RawRow>,
    pub summary: Vec<SummaryRow>,
    pub failures: Vec<FailureRow>,
}

#[derive(Clone, Debug, Default)]
pub struct CltRun {
    pub raw: Vec<RawRow>,
    pub summary: Vec<SummaryRow>,
    pub fits: Vec<CltFit>,
    pub failures: Vec<FailureRow>,
}

#[derive(Clone, Debug, Default)]
pub struct TemporalRun {
    pub raw: Vec<TemporalRow>,
    pub summary: Vec<TemporalSummaryRow>,
    pub snapshots: Vec<SnapshotCheck>,
    pub failures: Vec<FailureRow>,
}

fn check_sizes(config: &ExperimentConfig, sizes: &[usize], node_count: usize) -> Result<(), HarnessError> {
    if let Some(&bad) = sizes.iter().find(|&&s| s > node_count) {
        return Err(HarnessError::Config(format!(
            "node budget {bad} exceeds the {node_count} nodes of the {} dataset",
            config.kind
        )));
    }
    Ok(())
}

fn reference_rows(experiment: &str, graph: &Graph, metric_list: &[Metric]) -> Vec<RawRow> {
    let report = metrics::full_report(graph);
    metric_list
        .iter()
        .map(|&m| RawRow {
            experiment: experiment.to_string(),
            method: ORIGINAL.to_string(),
            size: graph.node_count(),
            replicate: 0,
            metric: m.to_string(),
            value: report.get(m).into(),
        })
        .collect()
}

/// Draws every `(method, size, replicate)` cell and measures `metric_list` on it.
fn replicate_rows(
    experiment: &str,
    config: &ExperimentConfig,
    graph: &Graph,
    sizes: &[usize],
    replicates: usize,
    metric_list: &[Metric],
) -> (Vec<RawRow>, Vec<FailureRow>) {
    let sampler = Sampler::new(graph);
    let jobs: Vec<(Method, usize, usize)> = config
        .methods
        .iter()
        .flat_map(|&m| sizes.iter().flat_map(move |&s| (0..replicates).map(move |r| (m, s, r))))
        .collect();
    let only_cheap = metric_list
        .iter()
        .all(|m| matches!(m, Metric::AvgDegree | Metric::GlobalClustering));
    let outcomes: Vec<_> = jobs
        .par_iter()
        .map(|&(method, size, replicate)| {
            let seed = derive_seed(config.master_seed, method, size, replicate);
            sampler.draw(method, size, seed).map(|s| {
                if only_cheap {
                    metric_list
                        .iter()
                        .map(|&m| match m {
                            Metric::AvgDegree => metrics::average_degree(&s.subgraph).ok(),
                            _ => metrics::global_clustering(&s.subgraph).ok(),
                        })
                        .collect::<Vec<_>>()
                } else {
                    let report = metrics::full_report(&s.subgraph);
                    metric_list.iter().map(|&m| report.get(m)).collect()
                }
            })
        })
        .collect();

    let mut raw = Vec::with_capacity(jobs.len() * metric_list.len());
    let mut failures = Vec::new();
    for (&(method, size, replicate), outcome) in jobs.iter().zip(outcomes) {
        let values: Vec<Value> = match outcome {
            Ok(values) => values.into_iter().map(Value::from).collect(),
            Err(e) => {
                failures.push(FailureRow {
                    experiment: experiment.to_string(),
                    method: method.to_string(),
                    size,
                    replicate,
                    error: e.to_string(),
                });
                vec![Value::Failed; metric_list.len()]
            }
        };
        for (&metric, value) in metric_list.iter().zip(values) {
            raw.push(RawRow {
                experiment: experiment.to_string(),
                method: method.to_string(),
                size,
                replicate,
                metric: metric.to_string(),
                value,
            });
        }
    }
    (raw, failures)
}

fn run_static(experiment: &str, config: &ExperimentConfig, graph: &Graph) -> Result<StaticRun, HarnessError> {
    config.validate()?;
    check_sizes(config, &config.size_grid, graph.node_count())?;
    let mut raw = reference_rows(experiment, graph, &Metric::REPORT);
    let (rows, failures) = replicate_rows(
        experiment,
        config,
        graph,
        &config.size_grid,
        config.replicates,
        &Metric::REPORT,
    );
    raw.extend(rows);
    let summary = summarize(&raw);
    Ok(StaticRun { raw, summary, failures })
}

/// Metric means across node budgets for every method.
pub fn run_convergence(config: &ExperimentConfig, graph: &Graph) -> Result<StaticRun, HarnessError> {
    run_static("convergence", config, graph)
}

/// Raw per-replicate metrics at fixed budgets, for boxplots.
pub fn run_boxplot(config: &ExperimentConfig, graph: &Graph) -> Result<StaticRun, HarnessError> {
    run_static("boxplot", config, graph)
}

const CLT_METRICS: [Metric; 2] = [Metric::AvgDegree, Metric::GlobalClustering];

/// Sampling distributions of average degree and global clustering.
///
/// The replicate groups are nested prefixes of one replicate stream: the group
/// of `g` samples is replicates `0..g`.
pub fn run_clt(config: &ExperimentConfig, graph: &Graph) -> Result<CltRun, HarnessError> {
    config.validate()?;
    let size = config.size_grid[0];
    check_sizes(config, &[size], graph.node_count())?;
    let mut raw = reference_rows("clt", graph, &CLT_METRICS);
    let (rows, failures) = replicate_rows("clt", config, graph, &[size], config.max_sample_count(), &CLT_METRICS);
    raw.extend(rows);

    let mut fits = Vec::new();
    for &method in &config.methods {
        for &metric in &CLT_METRICS {
            let series: Vec<Option<f64>> = raw
                .iter()
                .filter(|r| r.method == method.as_str() && r.metric == metric.as_str())
                .map(|r| r.value.number())
                .collect();
            for &group in &config.sample_counts {
                let values: Vec<f64> = series[..group].iter().flatten().copied().collect();
                fits.push(CltFit {
                    method: method.to_string(),
                    size,
                    replicates_group: group,
                    metric: metric.to_string(),
                    mean: stats::mean(&values),
                    std: stats::sample_std(&values),
                    skewness: stats::skewness(&values),
                    count: values.len(),
                });
            }
        }
    }
    let summary = summarize(&raw);
    Ok(CltRun {
        raw,
        summary,
        fits,
        failures,
    })
}

const TEMPORAL_METRICS: [&str; 5] = [
    "edge_count",
    "avg_degree",
    "avg_clustering",
    "global_clustering",
    "edge_percentage",
];

/// Per-snapshot values of [`TEMPORAL_METRICS`] for one snapshot sequence.
fn snapshot_values(snapshots: &[Graph]) -> Vec<[Value; 5]> {
    let series = metrics::temporal_series(snapshots);
    (0..snapshots.len())
        .map(|t| {
            [
                Value::Number(series.edge_counts[t] as f64),
                series.avg_degree[t].into(),
                series.avg_clustering[t].into(),
                series.global_clustering[t].into(),
                series.edge_percentage.as_ref().map(|p| p[t]).into(),
            ]
        })
        .collect()
}

/// Samples nodes on the first snapshot and follows the induced subgraphs of
/// that node set through every snapshot. Replicate groups are nested prefixes
/// of one replicate stream per method.
pub fn run_temporal(
    config: &ExperimentConfig,
    multiplex: &TemporalMultiplexGraph,
) -> Result<TemporalRun, HarnessError> {
    config.validate()?;
    if multiplex.is_empty() {
        return Err(HarnessError::Experiment("temporal network has no snapshots".into()));
    }
    let first = multiplex.snapshot(0);
    let size = config.size_grid[0];
    check_sizes(config, &[size], first.node_count())?;

    let mut raw = Vec::new();
    for (t, values) in snapshot_values(multiplex.snapshots()).into_iter().enumerate() {
        for (metric, value) in TEMPORAL_METRICS.iter().zip(values) {
            raw.push(TemporalRow {
                method: ORIGINAL.to_string(),
                replicates_group: 0,
                replicate: 0,
                t,
                metric: metric.to_string(),
                value,
            });
        }
    }

    let sampler = Sampler::new(first);
    let max_group = config.max_sample_count();
    let mut failures = Vec::new();
    for &method in &config.methods {
        let outcomes: Vec<_> = (0..max_group)
            .into_par_iter()
            .map(|replicate| {
                let seed = derive_seed(config.master_seed, method, size, replicate);
                sampler.draw(method, size, seed).map(|s| {
                    let induced: Vec<Graph> = multiplex
                        .snapshots()
                        .iter()
                        .map(|g| g.induced_subgraph(&s.nodes))
                        .collect();
                    snapshot_values(&induced)
                })
            })
            .collect();
        let outcomes: Vec<Vec<[Value; 5]>> = outcomes
            .into_iter()
            .enumerate()
            .map(|(replicate, o)| {
                o.unwrap_or_else(|e| {
                    failures.push(FailureRow {
                        experiment: "temporal".into(),
                        method: method.to_string(),
                        size,
                        replicate,
                        error: e.to_string(),
                    });
                    vec![[Value::Failed; 5]; multiplex.len()]
                })
            })
            .collect();
        for &group in &config.sample_counts {
            for (replicate, per_t) in outcomes[..group].iter().enumerate() {
                for (t, values) in per_t.iter().enumerate() {
                    for (metric, &value) in TEMPORAL_METRICS.iter().zip(values) {
                        raw.push(TemporalRow {
                            method: method.to_string(),
                            replicates_group: group,
                            replicate,
                            t,
                            metric: metric.to_string(),
                            value,
                        });
                    }
                }
            }
        }
    }
    let summary = summarize_temporal(&raw);
    Ok(TemporalRun {
        raw,
        summary,
        snapshots: snapshot_checks(multiplex),
        failures,
    })
}

pub fn load_static_graph(path: &std::path::Path) -> Result<Graph, IngestError> {
    Ok(Graph::from_edges(&ingest::load_static_edgelist(path)?))
}

pub fn load_multiplex(path: &std::path::Path, bin_width: u64) -> Result<TemporalMultiplexGraph, IngestError> {
    let events = ingest::load_temporal_edgelist(path)?;
    let bins = ingest::bin_temporal(&events, bin_width)?;
    ingest::constant_node_multiplex(&bins)
}

/// Loads the dataset named by `config`, runs the experiment and writes its
/// CSV files. Returns the paths written.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<PathBuf>, HarnessError> {
    config.validate()?;
    let dir = &config.output_dir;
    std::fs::create_dir_all(dir).map_err(|source| HarnessError::Io {
        path: dir.clone(),
        source,
    })?;
    let kind = config.kind.as_str();
    let path = |name: &str| dir.join(name);
    let mut written = Vec::new();
    match config.kind {
        ExperimentKind::Convergence | ExperimentKind::Boxplot => {
            let graph = load_static_graph(&config.static_dataset)?;
            let run = if config.kind == ExperimentKind::Convergence {
                run_convergence(config, &graph)?
            } else {
                run_boxplot(config, &graph)?
            };
            written.push(output::write_raw(&path(&format!("{kind}_raw.csv")), &run.raw)?);
            written.push(output::write_summary(
                &path(&format!("{kind}_summary.csv")),
                &run.summary,
            )?);
            written.push(output::write_failures(
                &path(&format!("{kind}_failures.csv")),
                &run.failures,
            )?);
        }
        ExperimentKind::Clt => {
            let graph = load_static_graph(&config.static_dataset)?;
            let run = run_clt(config, &graph)?;
            written.push(output::write_raw(&path("clt_raw.csv"), &run.raw)?);
            written.push(output::write_summary(&path("clt_summary.csv"), &run.summary)?);
            written.push(output::write_clt_fits(&path("clt_fit.csv"), &run.fits)?);
            written.push(output::write_failures(&path("clt_failures.csv"), &run.failures)?);
        }
        ExperimentKind::Temporal => {
            let multiplex = load_multiplex(&config.temporal_dataset, config.bin_width_seconds())?;
            let run = run_temporal(config, &multiplex)?;
            written.push(output::write_temporal_raw(&path("temporal_raw.csv"), &run.raw)?);
            written.push(output::write_temporal_summary(
                &path("temporal_summary.csv"),
                &run.summary,
            )?);
            written.push(output::write_snapshot_checks(
                &path("temporal_snapshots.csv"),
                &run.snapshots,
            )?);
            written.push(output::write_failures(&path("temporal_failures.csv"), &run.failures)?);
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(method: &str, metric: &str, value: Value) -> RawRow {
        RawRow {
            experiment: "x".into(),
            method: method.into(),
            size: 5,
            replicate: 0,
            metric: metric.into(),
            value,
        }
    }

    #[test]
    fn summarize_groups_in_order_and_skips_non_numbers() {
        let rows = vec![
            raw("UNS", "a", Value::Number(1.0)),
            raw("UNS", "b", Value::Absent),
            raw("UNS", "a", Value::Number(3.0)),
            raw("WNS", "a", Value::Failed),
        ];
        let s = summarize(&rows);
        assert_eq!(s.len(), 3);
        assert_eq!((s[0].method.as_str(), s[0].metric.as_str()), ("UNS", "a"));
        assert_eq!(s[0].summary.unwrap().mean, 2.0);
        assert_eq!(s[1].summary, None);
        assert_eq!(s[2].count(), 0);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(HarnessError::Config("x".into()).exit_code(), 1);
        assert_eq!(HarnessError::Dataset(IngestError::NoEvents).exit_code(), 2);
        assert_eq!(HarnessError::Experiment("x".into()).exit_code(), 3);
    }

    #[test]
    fn deviation_is_relative() {
        let check = SnapshotCheck {
            t: 0,
            nodes: 116,
            edges: 400,
            reference_edges: Some(382),
            avg_degree: None,
            avg_clustering: None,
            global_clustering: None,
        };
        assert!((check.deviation().unwrap() - 18.0 / 382.0).abs() < 1e-15);
    }
}

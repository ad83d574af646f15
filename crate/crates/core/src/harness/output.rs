//! CSV writers for the harness row types.

use std::io::Write;
use std::path::{Path, PathBuf};

use super::{
    CltFit, FailureRow, HarnessError, RawRow, SnapshotCheck, Summary, SummaryRow, TemporalRow, TemporalSummaryRow,
    Value,
};

pub const RAW_HEADER: [&str; 6] = ["experiment", "method", "size", "replicate", "metric", "value"];
pub const SUMMARY_HEADER: [&str; 12] = [
    "experiment",
    "method",
    "size",
    "metric",
    "mean",
    "std",
    "min",
    "q1",
    "median",
    "q3",
    "max",
    "count",
];
pub const TEMPORAL_RAW_HEADER: [&str; 6] = ["method", "replicates_group", "replicate", "t", "metric", "value"];
pub const TEMPORAL_SUMMARY_HEADER: [&str; 12] = [
    "method",
    "replicates_group",
    "t",
    "metric",
    "mean",
    "std",
    "min",
    "q1",
    "median",
    "q3",
    "max",
    "count",
];
pub const FAILURE_HEADER: [&str; 5] = ["experiment", "method", "size", "replicate", "error"];
pub const CLT_FIT_HEADER: [&str; 8] = [
    "method",
    "size",
    "replicates_group",
    "metric",
    "mean",
    "std",
    "skewness",
    "count",
];
pub const SNAPSHOT_HEADER: [&str; 9] = [
    "t",
    "nodes",
    "edges",
    "reference_edges",
    "edge_deviation",
    "avg_degree",
    "avg_clustering",
    "global_clustering",
    "within_tolerance",
];

fn num(v: f64) -> String {
    v.to_string()
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn value(v: Value) -> String {
    match v {
        Value::Number(x) => num(x),
        Value::Absent => String::new(),
        Value::Failed => "FAILED".to_string(),
    }
}

fn summary_cells(s: Option<Summary>) -> [String; 8] {
    match s {
        Some(s) => [
            num(s.mean),
            opt(s.std),
            num(s.min),
            num(s.q1),
            num(s.median),
            num(s.q3),
            num(s.max),
            s.count.to_string(),
        ],
        None => {
            let mut cells: [String; 8] = Default::default();
            cells[7] = "0".into();
            cells
        }
    }
}

fn write_rows<W: Write, const N: usize>(
    sink: W,
    header: [&str; N],
    rows: impl Iterator<Item = Vec<String>>,
) -> Result<(), HarnessError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn to_file<const N: usize>(
    path: &Path,
    header: [&str; N],
    rows: impl Iterator<Item = Vec<String>>,
) -> Result<PathBuf, HarnessError> {
    let file = std::fs::File::create(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_rows(std::io::BufWriter::new(file), header, rows)?;
    Ok(path.to_path_buf())
}

fn raw_cells(r: &RawRow) -> Vec<String> {
    vec![
        r.experiment.clone(),
        r.method.clone(),
        r.size.to_string(),
        r.replicate.to_string(),
        r.metric.clone(),
        value(r.value),
    ]
}

fn summary_row_cells(r: &SummaryRow) -> Vec<String> {
    let mut cells = vec![
        r.experiment.clone(),
        r.method.clone(),
        r.size.to_string(),
        r.metric.clone(),
    ];
    cells.extend(summary_cells(r.summary));
    cells
}

pub fn raw_to_writer<W: Write>(sink: W, rows: &[RawRow]) -> Result<(), HarnessError> {
    write_rows(sink, RAW_HEADER, rows.iter().map(raw_cells))
}

pub fn summary_to_writer<W: Write>(sink: W, rows: &[SummaryRow]) -> Result<(), HarnessError> {
    write_rows(sink, SUMMARY_HEADER, rows.iter().map(summary_row_cells))
}

pub fn write_raw(path: &Path, rows: &[RawRow]) -> Result<PathBuf, HarnessError> {
    to_file(path, RAW_HEADER, rows.iter().map(raw_cells))
}

pub fn write_summary(path: &Path, rows: &[SummaryRow]) -> Result<PathBuf, HarnessError> {
    to_file(path, SUMMARY_HEADER, rows.iter().map(summary_row_cells))
}

pub fn write_failures(path: &Path, rows: &[FailureRow]) -> Result<PathBuf, HarnessError> {
    to_file(
        path,
        FAILURE_HEADER,
        rows.iter().map(|r| {
            vec![
                r.experiment.clone(),
                r.method.clone(),
                r.size.to_string(),
                r.replicate.to_string(),
                r.error.clone(),
            ]
        }),
    )
}

pub fn write_temporal_raw(path: &Path, rows: &[TemporalRow]) -> Result<PathBuf, HarnessError> {
    to_file(
        path,
        TEMPORAL_RAW_HEADER,
        rows.iter().map(|r| {
            vec![
                r.method.clone(),
                r.replicates_group.to_string(),
                r.replicate.to_string(),
                r.t.to_string(),
                r.metric.clone(),
                value(r.value),
            ]
        }),
    )
}

pub fn write_temporal_summary(path: &Path, rows: &[TemporalSummaryRow]) -> Result<PathBuf, HarnessError> {
    to_file(
        path,
        TEMPORAL_SUMMARY_HEADER,
        rows.iter().map(|r| {
            let mut cells = vec![
                r.method.clone(),
                r.replicates_group.to_string(),
                r.t.to_string(),
                r.metric.clone(),
            ];
            cells.extend(summary_cells(r.summary));
            cells
        }),
    )
}

pub fn write_clt_fits(path: &Path, rows: &[CltFit]) -> Result<PathBuf, HarnessError> {
    to_file(
        path,
        CLT_FIT_HEADER,
        rows.iter().map(|r| {
            vec![
                r.method.clone(),
                r.size.to_string(),
                r.replicates_group.to_string(),
                r.metric.clone(),
                opt(r.mean),
                opt(r.std),
                opt(r.skewness),
                r.count.to_string(),
            ]
        }),
    )
}

pub fn write_snapshot_checks(path: &Path, rows: &[SnapshotCheck]) -> Result<PathBuf, HarnessError> {
    to_file(
        path,
        SNAPSHOT_HEADER,
        rows.iter().map(|r| {
            vec![
                r.t.to_string(),
                r.nodes.to_string(),
                r.edges.to_string(),
                r.reference_edges.map(|e| e.to_string()).unwrap_or_default(),
                opt(r.deviation()),
                opt(r.avg_degree),
                opt(r.avg_clustering),
                opt(r.global_clustering),
                r.deviation()
                    .map(|d| (d <= super::SNAPSHOT_DEVIATION_TOLERANCE).to_string())
                    .unwrap_or_default(),
            ]
        }),
    )
}

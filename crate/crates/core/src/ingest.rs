//! Loaders for SNAP-style edge lists and the temporal preprocessing pipeline.
//!
//! Static files hold one `u v` pair per line (tabs or spaces); temporal files
//! hold `u v t` with `t` in Unix seconds. Lines starting with `#` and blank
//! lines are skipped.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graph::{Graph, Label};

pub const SECONDS_PER_DAY: u64 = 86_400;

/// Default snapshot width: 40 days.
pub const DEFAULT_BIN_WIDTH: u64 = 40 * SECONDS_PER_DAY;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no events")]
    NoEvents,
    #[error("bin width must be positive")]
    ZeroBinWidth,
    #[error("no constant nodes")]
    NoConstantNodes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TemporalEvent {
    pub source: Label,
    pub target: Label,
    pub timestamp: u64,
}

/// Raw per-bin edge lists produced by [`bin_temporal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalBins {
    pub t0: u64,
    pub bin_width: u64,
    pub bins: Vec<Vec<(Label, Label)>>,
}

/// A fixed node set observed through an ordered sequence of snapshots.
#[derive(Clone, Debug)]
pub struct TemporalMultiplexGraph {
    node_labels: Vec<Label>,
    snapshots: Vec<Graph>,
    bin_width: u64,
    t0: u64,
}

impl TemporalMultiplexGraph {
    pub fn node_labels(&self) -> &[Label] {
        &self.node_labels
    }

    pub fn snapshots(&self) -> &[Graph] {
        &self.snapshots
    }

    pub fn snapshot(&self, t: usize) -> &Graph {
        &self.snapshots[t]
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn bin_width(&self) -> u64 {
        self.bin_width
    }

    pub fn t0(&self) -> u64 {
        self.t0
    }

    pub fn edge_counts(&self) -> Vec<usize> {
        self.snapshots.iter().map(Graph::edge_count).collect()
    }
}

fn open(path: &Path) -> Result<BufReader<File>, IngestError> {
    File::open(path).map(BufReader::new).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Splits each data line into exactly `N` unsigned integers.
fn parse_records<R: BufRead, const N: usize>(reader: R, path: &Path) -> Result<Vec<[u64; N]>, IngestError> {
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| IngestError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != N {
            return Err(IngestError::Parse {
                line: line_no,
                message: format!("expected {N} fields, found {}", tokens.len()),
            });
        }
        let mut record = [0u64; N];
        for (slot, token) in record.iter_mut().zip(&tokens) {
            *slot = token.parse().map_err(|_| IngestError::Parse {
                line: line_no,
                message: format!("invalid integer {token:?}"),
            })?;
        }
        records.push(record);
    }
    Ok(records)
}

pub fn parse_static_edgelist<R: BufRead>(reader: R) -> Result<Vec<(Label, Label)>, IngestError> {
    Ok(parse_records::<_, 2>(reader, Path::new("<input>"))?
        .into_iter()
        .map(|[u, v]| (u, v))
        .collect())
}

/// Reads every non-comment `u v` pair verbatim, without deduplication.
pub fn load_static_edgelist(path: impl AsRef<Path>) -> Result<Vec<(Label, Label)>, IngestError> {
    let path = path.as_ref();
    Ok(parse_records::<_, 2>(open(path)?, path)?
        .into_iter()
        .map(|[u, v]| (u, v))
        .collect())
}

pub fn parse_temporal_edgelist<R: BufRead>(reader: R) -> Result<Vec<TemporalEvent>, IngestError> {
    Ok(to_events(parse_records::<_, 3>(reader, Path::new("<input>"))?))
}

/// Reads `u v t` events in file order.
pub fn load_temporal_edgelist(path: impl AsRef<Path>) -> Result<Vec<TemporalEvent>, IngestError> {
    let path = path.as_ref();
    Ok(to_events(parse_records::<_, 3>(open(path)?, path)?))
}

fn to_events(records: Vec<[u64; 3]>) -> Vec<TemporalEvent> {
    records
        .into_iter()
        .map(|[source, target, timestamp]| TemporalEvent {
            source,
            target,
            timestamp,
        })
        .collect()
}

/// Distinct labels touched by any event.
pub fn distinct_labels(events: &[TemporalEvent]) -> usize {
    events
        .iter()
        .flat_map(|e| [e.source, e.target])
        .collect::<BTreeSet<_>>()
        .len()
}

/// Collapses events into a static undirected graph, ignoring time.
pub fn static_projection(events: &[TemporalEvent]) -> Graph {
    let pairs: Vec<(Label, Label)> = events.iter().map(|e| (e.source, e.target)).collect();
    Graph::from_edges(&pairs)
}

/// Groups events into half-open bins `[t0 + n·w, t0 + (n+1)·w)` anchored at the
/// earliest timestamp.
pub fn bin_temporal(events: &[TemporalEvent], bin_width: u64) -> Result<TemporalBins, IngestError> {
    if bin_width == 0 {
        return Err(IngestError::ZeroBinWidth);
    }
    let t0 = events.iter().map(|e| e.timestamp).min().ok_or(IngestError::NoEvents)?;
    let last = events
        .iter()
        .map(|e| ((e.timestamp - t0) / bin_width) as usize)
        .max()
        .unwrap_or(0);
    let mut bins = vec![Vec::new(); last + 1];
    for e in events {
        let idx = ((e.timestamp - t0) / bin_width) as usize;
        bins[idx].push((e.source, e.target));
    }
    Ok(TemporalBins { t0, bin_width, bins })
}

/// Labels that are an endpoint of at least one raw event in every bin.
pub fn constant_labels(bins: &[Vec<(Label, Label)>]) -> Vec<Label> {
    let mut iter = bins
        .iter()
        .map(|bin| bin.iter().flat_map(|&(u, v)| [u, v]).collect::<BTreeSet<Label>>());
    let Some(mut common) = iter.next() else {
        return Vec::new();
    };
    for set in iter {
        common.retain(|label| set.contains(label));
    }
    common.into_iter().collect()
}

/// Restricts every bin to the nodes present in all bins and simplifies each
/// snapshot; isolates are kept so the node count is constant.
pub fn constant_node_multiplex(bins: &TemporalBins) -> Result<TemporalMultiplexGraph, IngestError> {
    if bins.bins.is_empty() {
        return Err(IngestError::NoEvents);
    }
    let node_labels = constant_labels(&bins.bins);
    if node_labels.is_empty() {
        return Err(IngestError::NoConstantNodes);
    }
    let snapshots = bins
        .bins
        .iter()
        .map(|bin| Graph::from_edges_over(&node_labels, bin))
        .collect();
    Ok(TemporalMultiplexGraph {
        node_labels,
        snapshots,
        bin_width: bins.bin_width,
        t0: bins.t0,
    })
}

/// Builds a multiplex over an explicit label set, one snapshot per edge list.
pub fn multiplex_from_snapshots(
    node_labels: &[Label],
    snapshot_edges: &[Vec<(Label, Label)>],
    bin_width: u64,
    t0: u64,
) -> TemporalMultiplexGraph {
    let mut labels = node_labels.to_vec();
    labels.sort_unstable();
    labels.dedup();
    let snapshots = snapshot_edges
        .iter()
        .map(|bin| Graph::from_edges_over(&labels, bin))
        .collect();
    TemporalMultiplexGraph {
        node_labels: labels,
        snapshots,
        bin_width,
        t0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn ev(source: u64, target: u64, timestamp: u64) -> TemporalEvent {
        TemporalEvent {
            source,
            target,
            timestamp,
        }
    }

    #[test]
    fn static_skips_comments() {
        let pairs = parse_static_edgelist(Cursor::new("# hdr\n1\t2\n2\t3\n")).unwrap();
        assert_eq!(pairs, vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn static_empty_input() {
        assert!(parse_static_edgelist(Cursor::new("")).unwrap().is_empty());
    }

    #[test]
    fn static_accepts_spaces_and_trailing_blank() {
        let pairs = parse_static_edgelist(Cursor::new("4   5\n\n")).unwrap();
        assert_eq!(pairs, vec![(4, 5)]);
    }

    #[test]
    fn static_bad_token_names_line() {
        let err = parse_static_edgelist(Cursor::new("1 2\n3 x\n")).unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn static_wrong_arity() {
        let err = parse_static_edgelist(Cursor::new("1 2 3\n")).unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 1, .. }));
    }

    #[test]
    fn temporal_single_line() {
        let events = parse_temporal_edgelist(Cursor::new("1 2 100\n")).unwrap();
        assert_eq!(events, vec![ev(1, 2, 100)]);
    }

    #[test]
    fn temporal_missing_timestamp() {
        let err = parse_temporal_edgelist(Cursor::new("1 2 5\n1 2\n")).unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 2, .. }));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_static_edgelist("/nonexistent/edges.txt").unwrap_err();
        assert!(matches!(err, IngestError::Io { .. }));
    }

    #[test]
    fn bins_are_half_open() {
        let day = SECONDS_PER_DAY;
        let events = [ev(1, 2, 0), ev(2, 3, 39 * day), ev(3, 4, 40 * day)];
        let bins = bin_temporal(&events, DEFAULT_BIN_WIDTH).unwrap();
        assert_eq!(bins.bins.len(), 2);
        assert_eq!(bins.bins[0].len(), 2);
        assert_eq!(bins.bins[1].len(), 1);
    }

    #[test]
    fn bins_anchor_at_minimum_timestamp() {
        let events = [ev(1, 2, 1_000 + 10), ev(1, 2, 1_000)];
        let bins = bin_temporal(&events, 10).unwrap();
        assert_eq!(bins.t0, 1_000);
        assert_eq!(bins.bins.len(), 2);
    }

    #[test]
    fn single_event_single_bin() {
        let bins = bin_temporal(&[ev(1, 2, 77)], DEFAULT_BIN_WIDTH).unwrap();
        assert_eq!(bins.bins, vec![vec![(1, 2)]]);
    }

    #[test]
    fn empty_events_rejected() {
        assert!(matches!(bin_temporal(&[], 10), Err(IngestError::NoEvents)));
    }

    #[test]
    fn interior_empty_bins_are_kept() {
        let bins = bin_temporal(&[ev(1, 2, 0), ev(1, 2, 25)], 10).unwrap();
        assert_eq!(bins.bins.len(), 3);
        assert!(bins.bins[1].is_empty());
    }

    #[test]
    fn constant_nodes_two_bins() {
        let bins = TemporalBins {
            t0: 0,
            bin_width: 1,
            bins: vec![vec![(1, 2), (2, 3)], vec![(2, 3)]],
        };
        let m = constant_node_multiplex(&bins).unwrap();
        assert_eq!(m.node_labels(), &[2, 3]);
        assert_eq!(m.edge_counts(), vec![1, 1]);
    }

    #[test]
    fn snapshots_keep_isolates_and_merge_directions() {
        let bins = TemporalBins {
            t0: 0,
            bin_width: 1,
            bins: vec![vec![(1, 2), (2, 1), (3, 1)], vec![(1, 3), (2, 4)]],
        };
        let m = constant_node_multiplex(&bins).unwrap();
        assert_eq!(m.node_labels(), &[1, 2, 3]);
        assert_eq!(m.edge_counts(), vec![2, 1]);
        assert!(m.snapshots().iter().all(|g| g.node_count() == 3));
    }

    #[test]
    fn disjoint_bins_have_no_constant_nodes() {
        let bins = TemporalBins {
            t0: 0,
            bin_width: 1,
            bins: vec![vec![(1, 2)], vec![(3, 4)]],
        };
        assert!(matches!(
            constant_node_multiplex(&bins),
            Err(IngestError::NoConstantNodes)
        ));
    }

    #[test]
    fn projection_counts() {
        let events = [ev(1, 2, 0), ev(2, 1, 5), ev(3, 3, 9)];
        assert_eq!(distinct_labels(&events), 3);
        let g = static_projection(&events);
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
    }
}

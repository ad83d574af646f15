//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the traversal or metric code it is used to check.
#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use netsample::graph::{Graph, Label};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX;

/// Erdős–Rényi style random edge list over labels `0..n` (may include loops and repeats).
pub fn random_edges(n: u64, edges: usize, seed: u64) -> Vec<(Label, Label)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..edges)
        .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
        .collect()
}

/// Random graph on exactly the labels `0..n`, isolates included.
pub fn random_graph(n: u64, edges: usize, seed: u64) -> Graph {
    let labels: Vec<Label> = (0..n).collect();
    Graph::from_edges_over(&labels, &random_edges(n, edges, seed))
}

/// Dense symmetric adjacency matrix indexed by position in `labels`, built
/// straight from the raw pairs.
pub fn adjacency_from_pairs(labels: &[Label], pairs: &[(Label, Label)]) -> Vec<Vec<bool>> {
    let n = labels.len();
    let pos = |l: Label| labels.iter().position(|&x| x == l);
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in pairs {
        if u == v {
            continue;
        }
        if let (Some(i), Some(j)) = (pos(u), pos(v)) {
            a[i][j] = true;
            a[j][i] = true;
        }
    }
    a
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut a = vec![vec![false; n]; n];
    for v in 0..n {
        for &w in g.neighbors(v) {
            a[v][w] = true;
        }
    }
    a
}

/// Sorted label pairs of the restriction of `a` (indexed like `labels`) to `keep`.
pub fn restricted_edges(a: &[Vec<bool>], labels: &[Label], keep: &[usize]) -> Vec<(Label, Label)> {
    let mut out = Vec::new();
    for (x, &i) in keep.iter().enumerate() {
        for &j in &keep[x + 1..] {
            if a[i][j] {
                let (p, q) = (labels[i], labels[j]);
                out.push((p.min(q), p.max(q)));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn floyd_warshall(a: &[Vec<bool>]) -> Vec<Vec<u32>> {
    let n = a.len();
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if a[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Triangle count as trace(A³)/6.
pub fn triangles_by_trace(a: &[Vec<bool>]) -> u64 {
    let n = a.len();
    let m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&b| b as u64).collect()).collect();
    let mut trace = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                trace += m[i][j] * m[j][k] * m[k][i];
            }
        }
    }
    trace / 6
}

pub fn degrees(a: &[Vec<bool>]) -> Vec<u64> {
    a.iter().map(|r| r.iter().filter(|&&b| b).count() as u64).collect()
}

/// Stationary PageRank by solving `(I − d·Pᵀ) x = (1 − d)/n · 1` directly,
/// with dangling rows of `P` replaced by the uniform distribution.
pub fn dense_pagerank(a: &[Vec<bool>], damping: f64) -> Vec<f64> {
    let n = a.len();
    let deg = degrees(a);
    let mut p = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            p[i][j] = if deg[i] == 0 {
                1.0 / n as f64
            } else if a[i][j] {
                1.0 / deg[i] as f64
            } else {
                0.0
            };
        }
    }
    let mut m = vec![vec![0.0; n + 1]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = if i == j { 1.0 } else { 0.0 } - damping * p[j][i];
        }
        m[i][n] = (1.0 - damping) / n as f64;
    }
    solve(m)
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut m: Vec<Vec<f64>>) -> Vec<f64> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..=n {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    (0..n).map(|i| m[i][n] / m[i][i]).collect()
}

/// `|observed − p| ≤ 3·sqrt(p(1 − p)/trials)`.
pub fn within_three_sigma(hits: usize, trials: usize, p: f64) -> bool {
    let freq = hits as f64 / trials as f64;
    (freq - p).abs() <= 3.0 * (p * (1.0 - p) / trials as f64).sqrt()
}

/// Dataset directory: `$NETSAMPLE_DATA_DIR`, else `data/` at the workspace root.
pub fn data_dir() -> PathBuf {
    std::env::var_os("NETSAMPLE_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

pub fn dataset(name: &str) -> Option<PathBuf> {
    let path = data_dir().join(name);
    path.is_file().then_some(path)
}

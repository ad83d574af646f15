//! Node-budgeted graph sampling, structural metrics and a seeded Monte Carlo
//! harness for comparing how well samples preserve network structure.
//!
//! * [`graph`]: immutable simple undirected graphs and traversal primitives.
//! * [`ingest`]: SNAP edge-list loaders and temporal snapshot preprocessing.
//! * [`sampling`]: the nine samplers and PageRank.
//! * [`metrics`]: average degree, clustering, component, path and s-metric measures.
//! * [`harness`]: experiment configuration, replicate seeding, statistics and CSV output.

pub mod graph;
pub mod harness;
pub mod ingest;
pub mod metrics;
pub mod sampling;

pub use graph::{Graph, NodeId, NodeSet};
pub use sampling::{Method, Sample};

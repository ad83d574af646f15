use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use netsample::graph::connected_components;
use netsample::harness::{self, ExperimentConfig, ExperimentKind, HarnessError, SNAPSHOT_DEVIATION_TOLERANCE};
use netsample::ingest::{self, SECONDS_PER_DAY};
use netsample::metrics;
use netsample::sampling::{self, Method};

#[derive(Debug, Parser)]
#[command(name = "netsample", version, about = "Graph sampling experiments on SNAP edge lists")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print structural statistics of a dataset.
    Stats {
        dataset: PathBuf,
        /// Treat the dataset as a `u v t` temporal edge list.
        #[arg(long)]
        temporal: bool,
        /// Snapshot width in days for temporal datasets.
        #[arg(long, default_value_t = 40)]
        bin_days: u64,
    },
    /// Draw one sample from a static dataset and print its edge list.
    Sample {
        #[arg(long)]
        method: Method,
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = harness::config::DEFAULT_MASTER_SEED)]
        seed: u64,
        dataset: PathBuf,
    },
    /// Run one of the experiments and write its CSV files.
    Experiment {
        #[arg(value_parser = parse_kind)]
        kind: ExperimentKind,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
}

fn parse_kind(s: &str) -> Result<ExperimentKind, String> {
    s.parse().map_err(|e: HarnessError| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are configuration errors.
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Stats {
            dataset,
            temporal,
            bin_days,
        } => {
            if temporal {
                temporal_stats(&dataset, bin_days)
            } else {
                static_stats(&dataset)
            }
        }
        Command::Sample {
            method,
            nodes,
            seed,
            dataset,
        } => sample(method, nodes, seed, &dataset),
        Command::Experiment {
            kind,
            config,
            output_dir,
        } => experiment(kind, config, output_dir),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.4}"))
}

fn static_stats(path: &Path) -> Result<(), HarnessError> {
    let graph = harness::load_static_graph(path)?;
    let report = metrics::full_report(&graph);
    let lcc = connected_components(&graph).largest_size();
    println!("{:<32}{}", "Number of nodes", graph.node_count());
    println!("{:<32}{}", "Number of edges", graph.edge_count());
    println!("{:<32}{}", "Average degree", fmt_opt(report.avg_degree));
    println!("{:<32}{}", "Clustering coefficient (C)", fmt_opt(report.avg_clustering));
    println!("{:<32}{}", "Global clustering", fmt_opt(report.global_clustering));
    println!(
        "{:<32}{} ({lcc} nodes)",
        "Largest component size (S)",
        fmt_opt(report.lcc_ratio)
    );
    println!(
        "{:<32}{}",
        "Average shortest path in S",
        fmt_opt(report.avg_shortest_path)
    );
    println!(
        "{:<32}{}",
        "Density",
        report.density.map_or("undefined".into(), |d| format!("{d:.4e}"))
    );
    println!(
        "{:<32}{}",
        "s-metric",
        report.s_metric.map_or("undefined".into(), |s| s.to_string())
    );
    Ok(())
}

fn temporal_stats(path: &Path, bin_days: u64) -> Result<(), HarnessError> {
    if bin_days == 0 {
        return Err(HarnessError::Config("bin width must be positive".into()));
    }
    let events = ingest::load_temporal_edgelist(path)?;
    let projection = ingest::static_projection(&events);
    let bins = ingest::bin_temporal(&events, bin_days * SECONDS_PER_DAY)?;
    let multiplex = ingest::constant_node_multiplex(&bins)?;
    println!("{:<32}{}", "Temporal events", events.len());
    println!("{:<32}{}", "Distinct nodes", ingest::distinct_labels(&events));
    println!("{:<32}{}", "Static projection edges", projection.edge_count());
    println!("{:<32}{}", "Snapshots", multiplex.len());
    println!("{:<32}{}", "Constant nodes", multiplex.node_labels().len());
    println!();
    println!("t\tnodes\tedges\texpected\tdeviation\tC_avg\tC_global\t<k>");
    let mut out_of_tolerance = false;
    for check in harness::snapshot_checks(&multiplex) {
        let deviation = check.deviation();
        out_of_tolerance |= deviation.is_some_and(|d| d > SNAPSHOT_DEVIATION_TOLERANCE);
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            check.t,
            check.nodes,
            check.edges,
            check.reference_edges.map_or("-".into(), |e| e.to_string()),
            deviation.map_or("-".into(), |d| format!("{:.2}%", d * 100.0)),
            fmt_opt(check.avg_clustering),
            fmt_opt(check.global_clustering),
            fmt_opt(check.avg_degree),
        );
    }
    if out_of_tolerance {
        eprintln!(
            "warning: snapshot edge counts deviate from the reference by more than {:.0}%",
            SNAPSHOT_DEVIATION_TOLERANCE * 100.0
        );
    }
    Ok(())
}

fn sample(method: Method, nodes: usize, seed: u64, path: &Path) -> Result<(), HarnessError> {
    let graph = harness::load_static_graph(path)?;
    let sample = sampling::sample(&graph, method, nodes, seed).map_err(|e| HarnessError::Config(e.to_string()))?;
    let g = &sample.subgraph;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let io_err = |source| HarnessError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    writeln!(
        out,
        "# method={} target_nodes={} actual_nodes={} edges={} seed={} induced={}",
        method,
        nodes,
        sample.actual_nodes(),
        g.edge_count(),
        seed,
        sample.induced
    )
    .map_err(io_err)?;
    for v in g.nodes().filter(|&v| g.degree(v) == 0) {
        writeln!(out, "# isolated {}", g.label(v)).map_err(io_err)?;
    }
    for (a, b) in g.labeled_edges() {
        writeln!(out, "{a}\t{b}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

fn experiment(kind: ExperimentKind, config: Option<PathBuf>, output_dir: Option<PathBuf>) -> Result<(), HarnessError> {
    let mut config = match config {
        Some(path) => ExperimentConfig::load(kind, &path)?,
        None => ExperimentConfig::defaults(kind),
    };
    if let Some(dir) = output_dir {
        config.output_dir = dir;
    }
    for path in harness::run_experiment(&config)? {
        println!("{}", path.display());
    }
    Ok(())
}

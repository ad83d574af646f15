//! Experiment configuration.
//!
//! Config files are flat TOML tables whose keys mirror [`ExperimentConfig`];
//! every key is optional and falls back to the default setup for the
//! experiment kind being run.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use super::HarnessError;
use crate::ingest::SECONDS_PER_DAY;
use crate::sampling::Method;

pub const DEFAULT_MASTER_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    Convergence,
    Boxplot,
    Clt,
    Temporal,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 4] = [
        ExperimentKind::Convergence,
        ExperimentKind::Boxplot,
        ExperimentKind::Clt,
        ExperimentKind::Temporal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::Convergence => "convergence",
            ExperimentKind::Boxplot => "boxplot",
            ExperimentKind::Clt => "clt",
            ExperimentKind::Temporal => "temporal",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| HarnessError::Config(format!("unknown experiment {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub static_dataset: PathBuf,
    pub temporal_dataset: PathBuf,
    pub methods: Vec<Method>,
    /// Node budgets. CLT and temporal runs use the first entry.
    pub size_grid: Vec<usize>,
    /// Replicates per (method, size) cell for convergence and boxplot runs.
    pub replicates: usize,
    /// Numbers of replicate samples compared in CLT and temporal runs.
    pub sample_counts: Vec<usize>,
    pub master_seed: u64,
    pub output_dir: PathBuf,
    pub bin_width_days: u64,
}

impl ExperimentConfig {
    pub fn defaults(kind: ExperimentKind) -> Self {
        let (methods, size_grid, sample_counts): (Vec<Method>, Vec<usize>, Vec<usize>) = match kind {
            ExperimentKind::Convergence => (
                Method::STATIC.to_vec(),
                vec![250, 500, 1000, 1500, 2000, 2500, 3000, 4000],
                Vec::new(),
            ),
            ExperimentKind::Boxplot => (Method::STATIC.to_vec(), vec![1000], Vec::new()),
            ExperimentKind::Clt => (vec![Method::Uns], vec![2500], vec![10, 50, 100, 500, 1000]),
            ExperimentKind::Temporal => (vec![Method::Uns, Method::Prs], vec![30], vec![10, 50, 100, 500]),
        };
        Self {
            kind,
            static_dataset: PathBuf::from("data/CA-HepTh.txt"),
            temporal_dataset: PathBuf::from("data/CollegeMsg.txt"),
            methods,
            size_grid,
            replicates: 100,
            sample_counts,
            master_seed: DEFAULT_MASTER_SEED,
            output_dir: PathBuf::from("results"),
            bin_width_days: 40,
        }
    }

    pub fn from_toml_str(kind: ExperimentKind, text: &str) -> Result<Self, HarnessError> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| HarnessError::Config(e.message().to_string()))?;
        let mut config = Self::defaults(kind);
        if let Some(name) = file.experiment {
            let declared: ExperimentKind = name.parse()?;
            if declared != kind {
                return Err(HarnessError::Config(format!(
                    "config is for {declared} but {kind} was requested"
                )));
            }
        }
        if let Some(v) = file.static_dataset {
            config.static_dataset = v;
        }
        if let Some(v) = file.temporal_dataset {
            config.temporal_dataset = v;
        }
        if let Some(names) = file.methods {
            config.methods = names
                .iter()
                .map(|n| n.parse::<Method>().map_err(|e| HarnessError::Config(e.to_string())))
                .collect::<Result<_, _>>()?;
        }
        if let Some(v) = file.size_grid {
            config.size_grid = v;
        }
        if let Some(v) = file.replicates {
            config.replicates = v;
        }
        if let Some(v) = file.sample_counts {
            config.sample_counts = v;
        }
        if let Some(v) = file.master_seed {
            config.master_seed = v;
        }
        if let Some(v) = file.output_dir {
            config.output_dir = v;
        }
        if let Some(v) = file.bin_width_days {
            config.bin_width_days = v;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn load(kind: ExperimentKind, path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(kind, &text)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let fail = |msg: &str| Err(HarnessError::Config(msg.to_string()));
        if self.methods.is_empty() {
            return fail("methods must not be empty");
        }
        if self.size_grid.is_empty() || self.size_grid.contains(&0) {
            return fail("size_grid must hold positive node budgets");
        }
        if self.replicates == 0 {
            return fail("replicates must be at least 1");
        }
        if matches!(self.kind, ExperimentKind::Clt | ExperimentKind::Temporal)
            && (self.sample_counts.is_empty() || self.sample_counts.contains(&0))
        {
            return fail("sample_counts must hold positive replicate counts");
        }
        if self.bin_width_days == 0 {
            return fail("bin_width_days must be positive");
        }
        Ok(())
    }

    pub fn bin_width_seconds(&self) -> u64 {
        self.bin_width_days * SECONDS_PER_DAY
    }

    pub fn max_sample_count(&self) -> usize {
        self.sample_counts.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    experiment: Option<String>,
    static_dataset: Option<PathBuf>,
    temporal_dataset: Option<PathBuf>,
    methods: Option<Vec<String>>,
    size_grid: Option<Vec<usize>>,
    replicates: Option<usize>,
    sample_counts: Option<Vec<usize>>,
    master_seed: Option<u64>,
    output_dir: Option<PathBuf>,
    bin_width_days: Option<u64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c = ExperimentConfig::from_toml_str(ExperimentKind::Boxplot, "").unwrap();
        assert_eq!(c, ExperimentConfig::defaults(ExperimentKind::Boxplot));
        assert_eq!(c.master_seed, 42);
        assert_eq!(c.methods.len(), 8);
        assert_eq!(c.size_grid, vec![1000]);
    }

    #[test]
    fn overrides_apply() {
        let text = r#"
            methods = ["uns", "RWS"]
            size_grid = [10, 20]
            replicates = 3
            master_seed = 7
            output_dir = "out"
        "#;
        let c = ExperimentConfig::from_toml_str(ExperimentKind::Convergence, text).unwrap();
        assert_eq!(c.methods, vec![Method::Uns, Method::Rws]);
        assert_eq!(c.size_grid, vec![10, 20]);
        assert_eq!(c.replicates, 3);
        assert_eq!(c.master_seed, 7);
        assert_eq!(c.output_dir, PathBuf::from("out"));
    }

    #[test]
    fn rejects_unknown_keys_and_methods() {
        assert!(ExperimentConfig::from_toml_str(ExperimentKind::Clt, "nodes = 3").is_err());
        assert!(ExperimentConfig::from_toml_str(ExperimentKind::Clt, "methods = [\"XYZ\"]").is_err());
    }

    #[test]
    fn rejects_zero_replicates() {
        let err = ExperimentConfig::from_toml_str(ExperimentKind::Boxplot, "replicates = 0").unwrap_err();
        assert!(matches!(err, HarnessError::Config(_)));
    }

    #[test]
    fn experiment_key_must_match() {
        assert!(ExperimentConfig::from_toml_str(ExperimentKind::Clt, "experiment = \"clt\"").is_ok());
        assert!(ExperimentConfig::from_toml_str(ExperimentKind::Clt, "experiment = \"temporal\"").is_err());
    }

    #[test]
    fn temporal_defaults() {
        let c = ExperimentConfig::defaults(ExperimentKind::Temporal);
        assert_eq!(c.methods, vec![Method::Uns, Method::Prs]);
        assert_eq!(c.size_grid, vec![30]);
        assert_eq!(c.sample_counts, vec![10, 50, 100, 500]);
        assert_eq!(c.bin_width_seconds(), 40 * 86_400);
    }
}

//! Run configuration: a flat `key = value` file (TOML syntax, no nested
//! tables) with command-line flags overriding file values.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Tabular,
    Text,
    Graph,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Tabular => "tabular",
            Mode::Text => "text",
            Mode::Graph => "graph",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    User,
    Item,
    Hybrid,
}

impl Strategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::User => "user",
            Strategy::Item => "item",
            Strategy::Hybrid => "hybrid",
        }
    }
}

/// Raw file keys. Unknown keys are rejected so typos surface as config
/// errors instead of silently falling back to defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    mode: Option<String>,
    input: Option<String>,
    format: Option<String>,
    label_column: Option<String>,
    id_column: Option<String>,
    attributes: Option<Vec<String>>,
    count_attributes: Option<Vec<String>>,
    train_fraction: Option<f64>,
    seed: Option<u64>,
    alpha: Option<f64>,
    strategy: Option<String>,
    class: Option<String>,
    confidence: Option<f64>,
    lower: Option<f64>,
    upper: Option<f64>,
    sigma1: Option<f64>,
    sigma2: Option<f64>,
    sigma3: Option<f64>,
    max_k: Option<usize>,
    min_count: Option<usize>,
    labels_file: Option<String>,
    stopwords: Option<String>,
    top_k: Option<usize>,
    hist_bins: Option<usize>,
    binning: Option<String>,
    out: Option<String>,
}

/// Command-line overrides applied on top of the file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub input: Option<PathBuf>,
}

/// Resolved configuration with defaults applied and the seed mandatory.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub input: Option<PathBuf>,
    pub format: InputFormat,
    pub label_column: String,
    pub id_column: Option<String>,
    pub attributes: Vec<String>,
    pub count_attributes: BTreeSet<String>,
    pub train_fraction: f64,
    pub seed: u64,
    pub alpha: f64,
    pub strategy: Option<Strategy>,
    pub class: Option<String>,
    pub confidence: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub sigma1: Option<f64>,
    pub sigma2: Option<f64>,
    pub sigma3: Option<f64>,
    pub max_k: usize,
    pub min_count: usize,
    pub labels_file: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub top_k: usize,
    pub hist_bins: usize,
    pub binning: Option<PathBuf>,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn load(path: &Path, overrides: &Overrides) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        let file: FileConfig = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))?;
        Self::resolve(file, overrides)
    }

    fn resolve(file: FileConfig, overrides: &Overrides) -> CliResult<Self> {
        let mode = match file.mode.as_deref().unwrap_or("tabular") {
            "tabular" => Mode::Tabular,
            "text" => Mode::Text,
            "graph" => Mode::Graph,
            other => {
                return Err(CliError::Config(format!(
                    "mode must be tabular, text or graph, got {other:?}"
                )))
            }
        };
        let format = match file.format.as_deref().unwrap_or("csv") {
            "csv" => InputFormat::Csv,
            "jsonl" => InputFormat::Jsonl,
            other => {
                return Err(CliError::Config(format!(
                    "format must be csv or jsonl, got {other:?}"
                )))
            }
        };
        let strategy = match file.strategy.as_deref() {
            None => None,
            Some("user") => Some(Strategy::User),
            Some("item") => Some(Strategy::Item),
            Some("hybrid") => Some(Strategy::Hybrid),
            Some(other) => {
                return Err(CliError::Config(format!(
                    "strategy must be user, item or hybrid, got {other:?}"
                )))
            }
        };
        let seed = overrides
            .seed
            .or(file.seed)
            .ok_or_else(|| CliError::Config("seed is mandatory (config key or --seed)".into()))?;
        let attributes = file.attributes.unwrap_or_default();
        let count_attributes: BTreeSet<String> =
            file.count_attributes.unwrap_or_default().into_iter().collect();
        for c in &count_attributes {
            if !attributes.contains(c) {
                return Err(CliError::Config(format!(
                    "count_attributes entry {c:?} is not in attributes"
                )));
            }
        }
        let train_fraction = file.train_fraction.unwrap_or(0.75);
        let alpha = file.alpha.unwrap_or(1.0);
        let input = overrides
            .input
            .clone()
            .or_else(|| file.input.as_ref().map(PathBuf::from));
        let out = overrides
            .out
            .clone()
            .or_else(|| file.out.as_ref().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));
        Ok(RunConfig {
            mode,
            input,
            format,
            label_column: file.label_column.unwrap_or_else(|| "label".into()),
            id_column: file.id_column,
            attributes,
            count_attributes,
            train_fraction,
            seed,
            alpha,
            strategy,
            class: file.class,
            confidence: file.confidence,
            lower: file.lower,
            upper: file.upper,
            sigma1: file.sigma1,
            sigma2: file.sigma2,
            sigma3: file.sigma3,
            max_k: file.max_k.unwrap_or(audit_sampler::sampling::DEFAULT_MAX_GROUP_SIZE),
            min_count: file.min_count.unwrap_or(2),
            labels_file: file.labels_file.map(PathBuf::from),
            stopwords: file.stopwords.map(PathBuf::from),
            top_k: file.top_k.unwrap_or(20),
            hist_bins: file.hist_bins.unwrap_or(20),
            binning: file.binning.map(PathBuf::from),
            out,
        })
    }

    pub fn input_required(&self) -> CliResult<&Path> {
        self.input
            .as_deref()
            .ok_or_else(|| CliError::Config("input path is required (config key or --input)".into()))
    }

    pub fn class_required(&self) -> CliResult<&str> {
        self.class
            .as_deref()
            .ok_or_else(|| CliError::Config("class is required for sampling".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(text: &str) -> CliResult<RunConfig> {
        let file: FileConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        RunConfig::resolve(file, &Overrides::default())
    }

    #[test]
    fn minimal_config_needs_seed() {
        let err = resolve("mode = \"tabular\"\n").unwrap_err();
        assert_eq!(err.category(), "config");
        let cfg = resolve("seed = 7\n").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.mode, Mode::Tabular);
        assert_eq!(cfg.train_fraction, 0.75);
        assert_eq!(cfg.max_k, 3);
    }

    #[test]
    fn unknown_keys_are_config_errors() {
        assert!(resolve("seed = 1\nsigmaa1 = 0.5\n").is_err());
    }

    #[test]
    fn nested_tables_are_rejected() {
        assert!(resolve("seed = 1\n[section]\nx = 1\n").is_err());
    }

    #[test]
    fn count_attributes_must_be_attributes() {
        let err = resolve(
            "seed = 1\nattributes = [\"a\"]\ncount_attributes = [\"b\"]\n",
        )
        .unwrap_err();
        assert_eq!(err.category(), "config");
    }

    #[test]
    fn overrides_win() {
        let file: FileConfig =
            toml::from_str("seed = 1\nout = \"from-file\"\n").unwrap();
        let cfg = RunConfig::resolve(
            file,
            &Overrides { seed: Some(9), out: Some(PathBuf::from("cli-out")), input: None },
        )
        .unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.out, PathBuf::from("cli-out"));
    }
}

//! Report documents written by the commands.
//!
//! Every report is versioned JSON with struct-ordered fields, so two runs
//! with the same config and seed produce byte-identical files except for
//! the `timestamp` object, which holds the wall-clock start and elapsed
//! time and is excluded from reproducibility comparisons.

use std::fs;
use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use audit_sampler::dataset::ClassLabel;
use audit_sampler::metrics::{BinaryMetrics, MultivariateKs, VariabilityReport};
use audit_sampler::sampling::EvidenceReport;

use crate::error::CliResult;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Volatile run-time information, excluded from golden comparisons.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Timestamp {
    pub unix_ms: u128,
    pub elapsed_ms: u128,
}

impl Timestamp {
    pub fn since(start: Instant) -> Self {
        let unix_ms = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0);
        Self { unix_ms, elapsed_ms: start.elapsed().as_millis() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PopulationSummary {
    pub records: usize,
    pub attributes: usize,
    pub classes: Vec<ClassCount>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassCount {
    pub class: ClassLabel,
    pub members: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitSummary {
    pub train: usize,
    pub test: usize,
    pub train_fraction: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelSummary {
    pub labels: Vec<ClassLabel>,
    pub priors: Vec<f64>,
    pub alpha: f64,
    pub continuous_attributes: usize,
    pub count_attributes: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfusionSection {
    pub labels: Vec<ClassLabel>,
    pub counts: Vec<Vec<u64>>,
    pub normalized: Vec<Vec<f64>>,
    pub total: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub class: ClassLabel,
    #[serde(flatten)]
    pub metrics: BinaryMetrics<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AucSection {
    pub per_class: Vec<ClassAuc>,
    pub macro_auc: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassAuc {
    pub class: ClassLabel,
    pub auc: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TextSummary {
    pub dictionary_size: usize,
    pub min_count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub total_edge_multiplicity: u64,
    pub binned: usize,
    pub out_of_range: usize,
}

/// `train` output: model quality on the held-out test split.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainReport {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub mode: String,
    pub input: String,
    pub alpha: f64,
    pub population: PopulationSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub text: Option<TextSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSummary>,
    pub split: SplitSummary,
    pub model: ModelSummary,
    pub confusion: ConfusionSection,
    pub per_class_metrics: Vec<ClassMetrics>,
    pub macro_metrics: BinaryMetrics<f64>,
    pub auc: AucSection,
    pub timestamp: Timestamp,
}

/// `classify` output: model quality over a full labeled population.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub mode: String,
    pub input: String,
    pub population: PopulationSummary,
    pub predicted_counts: Vec<ClassCount>,
    pub confusion: ConfusionSection,
    pub per_class_metrics: Vec<ClassMetrics>,
    pub macro_metrics: BinaryMetrics<f64>,
    pub auc: AucSection,
    pub timestamp: Timestamp,
}

/// `sample` output: the drawn evidence, plus any surviving joint groups.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleReport {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub mode: String,
    pub strategy: String,
    pub class: ClassLabel,
    pub class_size: usize,
    pub population: usize,
    pub evidence: EvidenceReport<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<EvidenceReport<f64>>>,
    pub timestamp: Timestamp,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AttributeVariability {
    pub attribute: String,
    pub population: VariabilityReport<f64>,
    pub evidence: VariabilityReport<f64>,
}

/// `evaluate` output: KS agreement and variability, evidence vs
/// population.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub mode: String,
    pub input: String,
    pub evidence_size: usize,
    pub population_size: usize,
    pub ks: MultivariateKs<f64>,
    pub variability: Vec<AttributeVariability>,
    pub timestamp: Timestamp,
}

/// `graph-features` output summary (features go to CSV).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFeaturesReport {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub input: String,
    pub graph: GraphSummary,
    pub degree_sum: u64,
    pub per_class: Vec<ClassCount>,
    pub timestamp: Timestamp,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KeywordCount {
    pub keyword: String,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScopedTopKeywords {
    pub scope: String,
    pub top: Vec<KeywordCount>,
}

/// `text-features` output summary (rankings also go to CSV).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TextFeaturesReport {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub input: String,
    pub messages: usize,
    pub dictionary_size: usize,
    pub top_k: usize,
    pub rankings: Vec<ScopedTopKeywords>,
    pub timestamp: Timestamp,
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

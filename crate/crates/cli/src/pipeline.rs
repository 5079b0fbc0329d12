//! Shared featurization and model I/O for the commands.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use audit_sampler::classifier::NaiveBayesModel;
use audit_sampler::dataset::{self, AttributeSchema, Column, ColumnKind, LabeledDataset, Record};
use audit_sampler::graph::{self, BinAssignment, ClassBinning};
use audit_sampler::text::{self, KeywordDictionary};

use crate::config::{InputFormat, Mode, RunConfig};
use crate::error::{CliError, CliResult};

/// Stopword list bundled with the binary; override with the `stopwords`
/// config key. One token per line, `#` comments.
const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords.txt");

pub struct TextArtifacts {
    pub dictionary: KeywordDictionary,
}

pub struct GraphArtifacts {
    pub vertices: usize,
    pub total_multiplicity: u64,
    pub assignments: Vec<BinAssignment<f64>>,
    pub out_of_range: usize,
}

/// A population ready for classification, plus mode-specific artifacts.
pub struct Population {
    pub data: LabeledDataset<f64>,
    pub text: Option<TextArtifacts>,
    pub graph: Option<GraphArtifacts>,
}

pub fn tabular_schema(cfg: &RunConfig) -> CliResult<AttributeSchema> {
    if cfg.attributes.is_empty() {
        return Err(CliError::Config(
            "tabular mode needs a non-empty attributes list".into(),
        ));
    }
    let columns = cfg
        .attributes
        .iter()
        .map(|name| {
            if cfg.count_attributes.contains(name) {
                Column::count(name)
            } else {
                Column::continuous(name)
            }
        })
        .collect();
    let schema = AttributeSchema::new(columns, cfg.label_column.clone())?;
    match &cfg.id_column {
        Some(idc) => Ok(schema.with_id_column(idc.clone())?),
        None => Ok(schema),
    }
}

pub fn load_stopwords(cfg: &RunConfig) -> CliResult<BTreeSet<String>> {
    let text = match &cfg.stopwords {
        Some(path) => fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read stopwords {}: {e}", path.display()))
        })?,
        None => DEFAULT_STOPWORDS.to_string(),
    };
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_ascii_lowercase())
        .collect())
}

pub fn load_binning(cfg: &RunConfig) -> CliResult<ClassBinning<f64>> {
    match &cfg.binning {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Config(format!("cannot read binning {}: {e}", path.display()))
            })?;
            let rules = serde_json::from_str(&text)
                .map_err(|e| CliError::Config(format!("invalid binning {}: {e}", path.display())))?;
            Ok(ClassBinning::new(rules)?)
        }
        None => Ok(ClassBinning::default_risk_bins()),
    }
}

/// Message corpus: `(label, text)` CSV by default, or one message per
/// line with a sidecar label file when `labels_file` is configured.
pub fn load_corpus(cfg: &RunConfig) -> CliResult<(Vec<audit_sampler::dataset::ClassLabel>, Vec<String>)> {
    let input = cfg.input_required()?;
    match &cfg.labels_file {
        Some(labels) => Ok(text::load_message_lines(input, labels)?),
        None => Ok(text::load_message_csv(input)?),
    }
}

/// Keywords recovered from a model's count columns, preserving order.
fn dictionary_from_schema(schema: &AttributeSchema) -> CliResult<KeywordDictionary> {
    let keywords: Vec<String> = schema
        .columns()
        .iter()
        .filter(|c| c.kind == ColumnKind::Count)
        .map(|c| c.name.clone())
        .collect();
    Ok(KeywordDictionary::from_keywords(keywords)?)
}

/// Build the population dataset for the configured mode.
///
/// With `model_schema` given (classify/sample against an existing model),
/// text mode vectorizes with the model's keyword columns instead of
/// rebuilding a dictionary, and the resulting schema must match the
/// model's.
pub fn build_population(
    cfg: &RunConfig,
    model_schema: Option<&AttributeSchema>,
) -> CliResult<Population> {
    let input = cfg.input_required()?;
    match cfg.mode {
        Mode::Tabular => {
            let schema = tabular_schema(cfg)?;
            let data = match cfg.format {
                InputFormat::Csv => dataset::load_csv(input, &schema)?,
                InputFormat::Jsonl => dataset::load_jsonl(input, &schema)?,
            };
            check_schema(model_schema, data.schema())?;
            Ok(Population { data, text: None, graph: None })
        }
        Mode::Text => {
            let (labels, messages) = load_corpus(cfg)?;
            let dictionary = match model_schema {
                Some(schema) => dictionary_from_schema(schema)?,
                None => {
                    let stopwords = load_stopwords(cfg)?;
                    text::build_dictionary(&messages, &stopwords, cfg.min_count)?
                }
            };
            let data = text::to_dataset(&messages, &labels, &dictionary)?;
            check_schema(model_schema, data.schema())?;
            Ok(Population { data, text: Some(TextArtifacts { dictionary }), graph: None })
        }
        Mode::Graph => {
            let g = graph::load_edges(input)?;
            let features = g.vertex_features::<f64>();
            let binning = load_binning(cfg)?;
            let assignments = graph::bin_vertices(&features, &binning);
            let mut records = Vec::new();
            let mut labels = Vec::new();
            for a in &assignments {
                if let Some(class) = &a.class {
                    records.push(Record::new(
                        a.vertex.clone(),
                        vec![a.degree as f64, a.clustering],
                    ));
                    labels.push(class.clone());
                }
            }
            let out_of_range = assignments.len() - records.len();
            let schema = AttributeSchema::new(
                vec![Column::continuous("degree"), Column::continuous("clustering")],
                cfg.label_column.clone(),
            )?;
            let data = LabeledDataset::new(schema, records, labels)?;
            check_schema(model_schema, data.schema())?;
            Ok(Population {
                data,
                text: None,
                graph: Some(GraphArtifacts {
                    vertices: g.vertex_count(),
                    total_multiplicity: g.total_multiplicity(),
                    assignments,
                    out_of_range,
                }),
            })
        }
    }
}

fn check_schema(expected: Option<&AttributeSchema>, got: &AttributeSchema) -> CliResult<()> {
    if let Some(expected) = expected {
        if expected.columns() != got.columns() || expected.label_column() != got.label_column() {
            return Err(CliError::Schema(
                "population schema does not match the model's schema".into(),
            ));
        }
    }
    Ok(())
}

pub fn save_model(path: &Path, model: &NaiveBayesModel<f64>) -> CliResult<()> {
    let mut text = model.to_json()?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn load_model(path: &Path) -> CliResult<NaiveBayesModel<f64>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read model {}: {e}", path.display())))?;
    Ok(NaiveBayesModel::from_json(&text)?)
}

//! Subcommand implementations.

pub mod classify;
pub mod evaluate;
pub mod graph_features;
pub mod sample;
pub mod text_features;
pub mod train;

use std::path::Path;

use audit_sampler::classifier::PosteriorTable;
use audit_sampler::dataset::{ClassLabel, LabeledDataset};
use audit_sampler::metrics::{self, BinaryMetrics};

use crate::error::CliResult;
use crate::report::{
    AucSection, ClassAuc, ClassCount, ClassMetrics, ConfusionSection, PopulationSummary,
};

pub(crate) fn population_summary(data: &LabeledDataset<f64>) -> CliResult<PopulationSummary> {
    let mut classes = Vec::new();
    for label in data.label_set() {
        classes.push(ClassCount {
            class: label.clone(),
            members: data.class_members(label)?.len(),
        });
    }
    Ok(PopulationSummary {
        records: data.len(),
        attributes: data.schema().arity(),
        classes,
    })
}

/// Confusion matrix, per-class and macro metrics, per-class and macro AUC.
pub(crate) fn quality_sections(
    table: &PosteriorTable<f64>,
    truth: &[ClassLabel],
) -> CliResult<(ConfusionSection, Vec<ClassMetrics>, BinaryMetrics<f64>, AucSection)> {
    let cm = metrics::confusion(table, truth)?;
    let confusion = ConfusionSection {
        labels: cm.labels().to_vec(),
        counts: cm.counts().to_vec(),
        normalized: cm.normalized(),
        total: cm.total(),
    };
    let per_class = cm
        .labels()
        .iter()
        .map(|label| {
            metrics::binary_metrics(&cm, label).map(|m| ClassMetrics {
                class: label.clone(),
                metrics: m,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let macro_metrics = metrics::macro_metrics(&cm)?;
    let (per_class_auc, macro_auc) = metrics::one_vs_rest_auc(table, truth)?;
    let auc = AucSection {
        per_class: per_class_auc
            .into_iter()
            .map(|(class, auc)| ClassAuc { class, auc })
            .collect(),
        macro_auc,
    };
    Ok((confusion, per_class, macro_metrics, auc))
}

/// One-vs-rest ROC points for every class with both outcomes present:
/// `class,threshold,false_positive_rate,true_positive_rate` rows.
pub(crate) fn write_roc_csv(
    path: &Path,
    table: &PosteriorTable<f64>,
    truth: &[ClassLabel],
) -> CliResult<()> {
    let mut wtr = csv::Writer::from_path(path)?;
    wtr.write_record(["class", "threshold", "false_positive_rate", "true_positive_rate"])?;
    for label in table.class_labels() {
        let scores = table.class_column(label)?;
        let is_positive: Vec<bool> = truth.iter().map(|t| t == label).collect();
        let curve = match metrics::roc_curve(&scores, &is_positive) {
            Ok(c) => c,
            Err(audit_sampler::Error::SingleClassTruth) => continue,
            Err(e) => return Err(e.into()),
        };
        for p in &curve.points {
            wtr.write_record([
                label.as_str().to_string(),
                p.threshold.map_or_else(|| "max".to_string(), |t| t.to_string()),
                p.false_positive_rate.to_string(),
                p.true_positive_rate.to_string(),
            ])?;
        }
    }
    wtr.flush().map_err(|e| crate::error::CliError::Io(e.to_string()))?;
    Ok(())
}

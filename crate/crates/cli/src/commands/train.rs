//! `train`: fit a model on a seeded train split and report its quality on
//! the held-out test split.

use std::fs;
use std::time::Instant;

use audit_sampler::classifier;
use audit_sampler::dataset::{ColumnKind, SplitSpec};

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::pipeline::{build_population, save_model};
use crate::report::{
    self, GraphSummary, ModelSummary, SplitSummary, TextSummary, Timestamp, TrainReport,
    REPORT_SCHEMA_VERSION,
};

use super::{population_summary, quality_sections, write_roc_csv};

pub fn run(cfg: &RunConfig) -> CliResult<()> {
    let start = Instant::now();
    fs::create_dir_all(&cfg.out)?;
    let population = build_population(cfg, None)?;
    let spec = SplitSpec::new(cfg.train_fraction, cfg.seed)?;
    let (train, test) = population.data.split(spec)?;
    let model = classifier::fit_with_alpha(&train, cfg.alpha)?;
    let table = model.classify_all(&test)?;
    let (confusion, per_class_metrics, macro_metrics, auc) =
        quality_sections(&table, test.labels())?;

    save_model(&cfg.out.join("model.json"), &model)?;
    write_roc_csv(&cfg.out.join("roc.csv"), &table, test.labels())?;
    if let Some(text) = &population.text {
        report::write_json(&cfg.out.join("dictionary.json"), &text.dictionary)?;
    }

    let schema = model.schema();
    let continuous = schema
        .columns()
        .iter()
        .filter(|c| c.kind == ColumnKind::Continuous)
        .count();
    let report = TrainReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: "train".into(),
        seed: cfg.seed,
        mode: cfg.mode.as_str().into(),
        input: cfg.input_required()?.display().to_string(),
        alpha: cfg.alpha,
        population: population_summary(&population.data)?,
        text: population.text.as_ref().map(|t| TextSummary {
            dictionary_size: t.dictionary.len(),
            min_count: cfg.min_count,
        }),
        graph: population.graph.as_ref().map(|g| GraphSummary {
            vertices: g.vertices,
            total_edge_multiplicity: g.total_multiplicity,
            binned: g.assignments.len() - g.out_of_range,
            out_of_range: g.out_of_range,
        }),
        split: SplitSummary {
            train: train.len(),
            test: test.len(),
            train_fraction: cfg.train_fraction,
        },
        model: ModelSummary {
            labels: model.labels().to_vec(),
            priors: model.log_priors().iter().map(|l| l.exp()).collect(),
            alpha: model.alpha(),
            continuous_attributes: continuous,
            count_attributes: schema.arity() - continuous,
        },
        confusion,
        per_class_metrics,
        macro_metrics,
        auc,
        timestamp: Timestamp::since(start),
    };
    report::write_json(&cfg.out.join("report.json"), &report)?;

    let accuracy = report
        .macro_metrics
        .accuracy
        .map_or_else(|| "undefined".to_string(), |a| format!("{a:.4}"));
    println!(
        "train: {} records -> train {} / test {}, macro accuracy {}, model {}",
        report.population.records,
        train.len(),
        test.len(),
        accuracy,
        cfg.out.join("model.json").display()
    );
    Ok(())
}

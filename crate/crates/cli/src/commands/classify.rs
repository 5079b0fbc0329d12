//! `classify`: score a labeled population with an existing model and
//! report posteriors and quality.

use std::fs;
use std::path::Path;
use std::time::Instant;

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::pipeline::{build_population, load_model};
use crate::report::{self, ClassCount, ClassifyReport, Timestamp, REPORT_SCHEMA_VERSION};

use super::{population_summary, quality_sections, write_roc_csv};

pub fn run(cfg: &RunConfig, model_path: &Path) -> CliResult<()> {
    let start = Instant::now();
    fs::create_dir_all(&cfg.out)?;
    let model = load_model(model_path)?;
    let population = build_population(cfg, Some(model.schema()))?;
    let table = model.classify_all(&population.data)?;
    let (confusion, per_class_metrics, macro_metrics, auc) =
        quality_sections(&table, population.data.labels())?;

    // Per-record posteriors for external inspection.
    let mut wtr = csv::Writer::from_path(cfg.out.join("posteriors.csv"))?;
    let mut header = vec!["id".to_string(), "label".to_string(), "predicted".to_string()];
    header.extend(table.class_labels().iter().map(|l| l.as_str().to_string()));
    wtr.write_record(&header)?;
    for (i, record) in population.data.records().iter().enumerate() {
        let mut row = vec![
            record.id.clone(),
            population.data.labels()[i].as_str().to_string(),
            table.predicted_label(i).as_str().to_string(),
        ];
        row.extend(table.posteriors()[i].iter().map(|p| p.to_string()));
        wtr.write_record(&row)?;
    }
    wtr.flush()
        .map_err(|e| crate::error::CliError::Io(e.to_string()))?;

    write_roc_csv(&cfg.out.join("roc.csv"), &table, population.data.labels())?;

    let predicted_counts = table
        .class_labels()
        .iter()
        .enumerate()
        .map(|(c, label)| ClassCount {
            class: label.clone(),
            members: (0..table.len()).filter(|&i| table.predicted_index(i) == c).count(),
        })
        .collect();
    let report = ClassifyReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: "classify".into(),
        seed: cfg.seed,
        mode: cfg.mode.as_str().into(),
        input: cfg.input_required()?.display().to_string(),
        population: population_summary(&population.data)?,
        predicted_counts,
        confusion,
        per_class_metrics,
        macro_metrics,
        auc,
        timestamp: Timestamp::since(start),
    };
    report::write_json(&cfg.out.join("classify.json"), &report)?;
    println!(
        "classify: {} records scored, posteriors at {}",
        population.data.len(),
        cfg.out.join("posteriors.csv").display()
    );
    Ok(())
}

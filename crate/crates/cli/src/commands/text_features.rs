//! `text-features`: build the keyword dictionary and compare top-k
//! keyword rankings across the corpus, its classes and (optionally) a
//! drawn evidence set.

use std::fs;
use std::path::Path;
use std::time::Instant;

use audit_sampler::text;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::pipeline::{load_corpus, load_stopwords};
use crate::report::{
    self, KeywordCount, SampleReport, ScopedTopKeywords, TextFeaturesReport, Timestamp,
    REPORT_SCHEMA_VERSION,
};

pub fn run(cfg: &RunConfig, evidence_path: Option<&Path>) -> CliResult<()> {
    let start = Instant::now();
    fs::create_dir_all(&cfg.out)?;
    let input = cfg.input_required()?;
    let (labels, messages) = load_corpus(cfg)?;
    let stopwords = load_stopwords(cfg)?;
    let dictionary = text::build_dictionary(&messages, &stopwords, cfg.min_count)?;
    let vectors = text::vectorize(&messages, &dictionary);

    let mut scopes: Vec<(String, Vec<usize>)> =
        vec![("all".into(), (0..messages.len()).collect())];
    let mut seen = Vec::new();
    for label in &labels {
        if !seen.contains(label) {
            seen.push(label.clone());
        }
    }
    for label in &seen {
        let rows: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| *l == label)
            .map(|(i, _)| i)
            .collect();
        scopes.push((format!("class:{}", label.as_str()), rows));
    }
    if let Some(path) = evidence_path {
        let sample: SampleReport = serde_json::from_str(
            &fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read evidence {}: {e}", path.display())))?,
        )
        .map_err(|e| CliError::Data(format!("invalid evidence file: {e}")))?;
        let rows: Vec<usize> = sample.evidence.members.iter().map(|m| m.index).collect();
        if rows.iter().any(|&i| i >= messages.len()) {
            return Err(CliError::Data(
                "evidence indices exceed the corpus size".into(),
            ));
        }
        scopes.push(("evidence".into(), rows));
    }

    let mut rankings = Vec::new();
    let mut wtr = csv::Writer::from_path(cfg.out.join("top_keywords.csv"))?;
    wtr.write_record(["scope", "rank", "keyword", "count"])?;
    for (scope, rows) in &scopes {
        let subset: Vec<Vec<u64>> = rows.iter().map(|&i| vectors[i].clone()).collect();
        let totals = text::aggregate_counts(&dictionary, &subset);
        let top = text::top_keywords(&dictionary, &totals, cfg.top_k)?;
        for (rank, (keyword, count)) in top.iter().enumerate() {
            wtr.write_record([
                scope.clone(),
                (rank + 1).to_string(),
                keyword.clone(),
                count.to_string(),
            ])?;
        }
        rankings.push(ScopedTopKeywords {
            scope: scope.clone(),
            top: top
                .into_iter()
                .map(|(keyword, count)| KeywordCount { keyword, count })
                .collect(),
        });
    }
    wtr.flush().map_err(|e| CliError::Io(e.to_string()))?;

    // Dataset-compatible count matrix for the classifier pipeline.
    let mut cwtr = csv::Writer::from_path(cfg.out.join("counts.csv"))?;
    let mut header: Vec<String> = dictionary.keywords().to_vec();
    header.push("label".into());
    cwtr.write_record(&header)?;
    for (i, v) in vectors.iter().enumerate() {
        let mut row: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        row.push(labels[i].as_str().to_string());
        cwtr.write_record(&row)?;
    }
    cwtr.flush().map_err(|e| CliError::Io(e.to_string()))?;

    report::write_json(&cfg.out.join("dictionary.json"), &dictionary)?;
    let report = TextFeaturesReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: "text-features".into(),
        seed: cfg.seed,
        input: input.display().to_string(),
        messages: messages.len(),
        dictionary_size: dictionary.len(),
        top_k: cfg.top_k,
        rankings,
        timestamp: Timestamp::since(start),
    };
    report::write_json(&cfg.out.join("text_features.json"), &report)?;
    println!(
        "text-features: {} messages, {} keywords, rankings at {}",
        messages.len(),
        dictionary.len(),
        cfg.out.join("top_keywords.csv").display()
    );
    Ok(())
}

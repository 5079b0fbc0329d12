//! `evaluate`: distributional agreement (KS) and variability of drawn
//! evidence against its population.

use std::fs;
use std::path::Path;
use std::time::Instant;

use audit_sampler::metrics;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::pipeline::build_population;
use crate::report::{
    self, AttributeVariability, EvaluationReport, SampleReport, Timestamp,
    REPORT_SCHEMA_VERSION,
};

pub fn run(cfg: &RunConfig, evidence_paths: &[std::path::PathBuf]) -> CliResult<()> {
    let start = Instant::now();
    fs::create_dir_all(&cfg.out)?;
    let population = build_population(cfg, None)?;
    let data = &population.data;

    // Evidence sets drawn per class pool into one sample; the critical
    // value uses the pooled size.
    let mut indices: Vec<usize> = Vec::new();
    for path in evidence_paths {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read evidence {}: {e}", path.display())))?;
        let sample: SampleReport = serde_json::from_str(&text)
            .map_err(|e| CliError::Data(format!("invalid evidence file: {e}")))?;
        if sample.population != data.len() {
            return Err(CliError::Data(format!(
                "evidence {} was drawn from a population of {}, input has {} records",
                path.display(),
                sample.population,
                data.len()
            )));
        }
        for m in &sample.evidence.members {
            match data.records().get(m.index) {
                Some(r) if r.id == m.id => {}
                _ => {
                    return Err(CliError::Data(format!(
                        "evidence member {} (id {:?}) does not match the population",
                        m.index, m.id
                    )))
                }
            }
            indices.push(m.index);
        }
    }
    indices.sort_unstable();
    if indices.windows(2).any(|w| w[0] == w[1]) {
        return Err(CliError::Data("evidence sets overlap".into()));
    }
    if indices.is_empty() {
        return Err(CliError::Data(
            "evidence set is empty: nothing to evaluate".into(),
        ));
    }
    let m = indices.len();

    let names: Vec<String> = data
        .schema()
        .columns()
        .iter()
        .map(|c| c.name.clone())
        .collect();
    let mut population_columns = Vec::with_capacity(names.len());
    let mut evidence_columns = Vec::with_capacity(names.len());
    for name in &names {
        let column = data.column_values(name)?;
        let picked: Vec<f64> = indices.iter().map(|&i| column[i]).collect();
        population_columns.push(column);
        evidence_columns.push(picked);
    }
    let ks_inputs: Vec<(&str, &[f64], &[f64])> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), population_columns[i].as_slice(), evidence_columns[i].as_slice()))
        .collect();
    let ks = metrics::ks_multivariate(&ks_inputs, m)?;

    let mut variability = Vec::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        variability.push(AttributeVariability {
            attribute: name.clone(),
            population: metrics::variability(&population_columns[i])?,
            evidence: metrics::variability(&evidence_columns[i])?,
        });
    }

    write_histograms(
        &cfg.out.join("histograms.csv"),
        &names,
        &population_columns,
        &evidence_columns,
        cfg.hist_bins,
    )?;

    let report = EvaluationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: "evaluate".into(),
        seed: cfg.seed,
        mode: cfg.mode.as_str().into(),
        input: cfg.input_required()?.display().to_string(),
        evidence_size: m,
        population_size: data.len(),
        ks,
        variability,
        timestamp: Timestamp::since(start),
    };
    report::write_json(&cfg.out.join("evaluation.json"), &report)?;
    println!(
        "evaluate: {} evidence records vs {} population records, max KS d {:.6} (critical {:.6})",
        m,
        data.len(),
        report.ks.max_d,
        report.ks.critical
    );
    Ok(())
}

/// Plot-ready histogram bins per attribute: population and evidence
/// counts over the population's [min, max] range.
fn write_histograms(
    path: &Path,
    names: &[String],
    population: &[Vec<f64>],
    evidence: &[Vec<f64>],
    bins: usize,
) -> CliResult<()> {
    let bins = bins.max(1);
    let mut wtr = csv::Writer::from_path(path)?;
    wtr.write_record(["attribute", "bin_low", "bin_high", "population_count", "evidence_count"])?;
    for (i, name) in names.iter().enumerate() {
        let col = &population[i];
        let lo = col.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
        let bucket = |v: f64| -> usize {
            let b = ((v - lo) / width).floor() as isize;
            b.clamp(0, bins as isize - 1) as usize
        };
        let mut pop_counts = vec![0u64; bins];
        let mut ev_counts = vec![0u64; bins];
        for &v in col {
            pop_counts[bucket(v)] += 1;
        }
        for &v in &evidence[i] {
            ev_counts[bucket(v)] += 1;
        }
        for b in 0..bins {
            wtr.write_record([
                name.clone(),
                (lo + b as f64 * width).to_string(),
                (lo + (b + 1) as f64 * width).to_string(),
                pop_counts[b].to_string(),
                ev_counts[b].to_string(),
            ])?;
        }
    }
    wtr.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

//! `sample`: draw audit evidence from a classified population.

use std::fs;
use std::path::Path;
use std::time::Instant;

use audit_sampler::dataset::ClassLabel;
use audit_sampler::sampling::{
    self, EvidenceReport, PercentileBounds, Thresholds,
};

use crate::config::{RunConfig, Strategy};
use crate::error::{CliError, CliResult};
use crate::pipeline::{build_population, load_model};
use crate::report::{self, SampleReport, Timestamp, REPORT_SCHEMA_VERSION};

fn bounds_from(cfg: &RunConfig) -> CliResult<PercentileBounds<f64>> {
    match (cfg.lower, cfg.upper, cfg.confidence) {
        (Some(lo), Some(hi), _) => Ok(PercentileBounds::new(lo, hi)?),
        (None, None, Some(c)) => Ok(PercentileBounds::from_confidence(c)?),
        (Some(_), None, _) | (None, Some(_), _) => Err(CliError::Config(
            "set both lower and upper percentiles, or confidence".into(),
        )),
        (None, None, None) => Err(CliError::Config(
            "user/hybrid sampling needs confidence or lower+upper".into(),
        )),
    }
}

fn sigma1_required(cfg: &RunConfig) -> CliResult<f64> {
    cfg.sigma1
        .ok_or_else(|| CliError::Config("item/hybrid sampling needs sigma1".into()))
}

pub fn run(cfg: &RunConfig, model_path: &Path) -> CliResult<()> {
    let start = Instant::now();
    fs::create_dir_all(&cfg.out)?;
    let strategy = cfg
        .strategy
        .ok_or_else(|| CliError::Config("strategy is required for sampling".into()))?;
    let class = ClassLabel::new(cfg.class_required()?)?;

    let model = load_model(model_path)?;
    let population = build_population(cfg, Some(model.schema()))?;
    let table = model.classify_all(&population.data)?;
    let dist = sampling::build_distribution(&table, &population.data, &class)?;

    let mut groups: Option<Vec<EvidenceReport<f64>>> = None;
    let evidence = match strategy {
        Strategy::User => sampling::user_based_sample(&dist, bounds_from(cfg)?)?,
        Strategy::Item => {
            let sigma1 = sigma1_required(cfg)?;
            let evidence = sampling::item_based_sample(&dist, sigma1)?;
            // Joint-group search runs when sigma2 is configured; sigma3
            // falls back to sigma2 for searches that stop at pairs.
            if let Some(sigma2) = cfg.sigma2 {
                let sigma3 = cfg.sigma3.unwrap_or(sigma2);
                let thresholds = Thresholds::new(sigma1, sigma2, sigma3)?;
                let found =
                    sampling::item_based_group_search(&dist, thresholds, cfg.max_k.max(2))?;
                groups = Some(
                    found
                        .iter()
                        .map(|g| g.to_report(&population.data))
                        .collect::<Result<_, _>>()?,
                );
            }
            evidence
        }
        Strategy::Hybrid => {
            let sigma1 = sigma1_required(cfg)?;
            let thresholds =
                Thresholds::new(sigma1, cfg.sigma2.unwrap_or(1.0), cfg.sigma3.unwrap_or(1.0))?;
            sampling::hybrid_sample(&dist, bounds_from(cfg)?, thresholds)?
        }
    };

    if evidence.is_empty() {
        eprintln!("warning: evidence set is empty under the configured parameters");
    }
    let report = SampleReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: "sample".into(),
        seed: cfg.seed,
        mode: cfg.mode.as_str().into(),
        strategy: strategy.as_str().into(),
        class: class.clone(),
        class_size: dist.len(),
        population: population.data.len(),
        evidence: evidence.to_report(&population.data)?,
        groups,
        timestamp: Timestamp::since(start),
    };
    report::write_json(&cfg.out.join("evidence.json"), &report)?;

    let ri = evidence
        .ri
        .map_or_else(|| "undefined".to_string(), |v| format!("{v:.6}"));
    println!(
        "sample: {} of {} class members drawn (strategy {}, RI {}), evidence at {}",
        evidence.len(),
        dist.len(),
        strategy.as_str(),
        ri,
        cfg.out.join("evidence.json").display()
    );
    Ok(())
}

//! `graph-features`: degree centrality, clustering coefficient and risk
//! binning for every vertex of an edge-list multigraph.

use std::collections::BTreeMap;
use std::fs;
use std::time::Instant;

use audit_sampler::graph;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::pipeline::load_binning;
use crate::report::{
    self, ClassCount, GraphFeaturesReport, GraphSummary, Timestamp, REPORT_SCHEMA_VERSION,
};

/// Marker written in the `class` column for vertices whose clustering
/// coefficient falls outside the matched rule's interval.
pub const OUT_OF_RANGE: &str = "out_of_range";

pub fn run(cfg: &RunConfig) -> CliResult<()> {
    let start = Instant::now();
    fs::create_dir_all(&cfg.out)?;
    let input = cfg.input_required()?;
    let g = graph::load_edges(input)?;
    let features = g.vertex_features::<f64>();
    let binning = load_binning(cfg)?;
    let assignments = graph::bin_vertices(&features, &binning);

    let mut wtr = csv::Writer::from_path(cfg.out.join("features.csv"))?;
    wtr.write_record(["vertex", "degree", "clustering", "class"])?;
    let mut per_class: BTreeMap<String, usize> = BTreeMap::new();
    let mut out_of_range = 0usize;
    for a in &assignments {
        let class = match &a.class {
            Some(c) => {
                *per_class.entry(c.as_str().to_string()).or_insert(0) += 1;
                c.as_str().to_string()
            }
            None => {
                out_of_range += 1;
                OUT_OF_RANGE.to_string()
            }
        };
        wtr.write_record([
            a.vertex.clone(),
            a.degree.to_string(),
            a.clustering.to_string(),
            class,
        ])?;
    }
    wtr.flush().map_err(|e| CliError::Io(e.to_string()))?;

    let degree_sum: u64 = features.iter().map(|(_, f)| f.degree).sum();
    let report = GraphFeaturesReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: "graph-features".into(),
        seed: cfg.seed,
        input: input.display().to_string(),
        graph: GraphSummary {
            vertices: g.vertex_count(),
            total_edge_multiplicity: g.total_multiplicity(),
            binned: assignments.len() - out_of_range,
            out_of_range,
        },
        degree_sum,
        per_class: per_class
            .into_iter()
            .map(|(class, members)| {
                Ok(ClassCount {
                    class: audit_sampler::dataset::ClassLabel::new(class)?,
                    members,
                })
            })
            .collect::<CliResult<_>>()?,
        timestamp: Timestamp::since(start),
    };
    report::write_json(&cfg.out.join("graph_features.json"), &report)?;
    println!(
        "graph-features: {} vertices, total edge multiplicity {}, features at {}",
        g.vertex_count(),
        g.total_multiplicity(),
        cfg.out.join("features.csv").display()
    );
    Ok(())
}

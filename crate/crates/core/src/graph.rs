//! Multigraph features: degree centrality, clustering coefficient and
//! risk-class binning.
//!
//! Parallel edges are kept as multiplicities. Degree centrality sums the
//! multiplicities of incident edges (two transfers between the same
//! accounts count twice); the clustering coefficient is computed on the
//! underlying simple graph, so it always lies in [0, 1] regardless of
//! multiplicities.

use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::ClassLabel;
use crate::error::{Error, Result};
use crate::Scalar;

/// Undirected multigraph: vertices in first-appearance order, adjacency
/// with per-neighbor edge multiplicities.
#[derive(Debug, Clone, Default)]
pub struct MultiGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<BTreeMap<usize, u64>>,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(&i) = self.index.get(&name) {
            return i;
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        self.adjacency.push(BTreeMap::new());
        i
    }

    /// Add one undirected edge; repeated pairs accumulate multiplicity.
    /// Self-loops are rejected.
    pub fn add_edge(&mut self, a: impl Into<String>, b: impl Into<String>) -> Result<()> {
        let a = a.into();
        let b = b.into();
        if a == b {
            return Err(Error::SelfLoop { line: 0, vertex: a });
        }
        let ia = self.add_vertex(a);
        let ib = self.add_vertex(b);
        *self.adjacency[ia].entry(ib).or_insert(0) += 1;
        *self.adjacency[ib].entry(ia).or_insert(0) += 1;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// Total edge multiplicity (each parallel edge counted once).
    pub fn total_multiplicity(&self) -> u64 {
        self.adjacency.iter().flat_map(|adj| adj.values()).sum::<u64>() / 2
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn resolve(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Sum of incident edge multiplicities.
    pub fn degree_centrality(&self, vertex: &str) -> Result<u64> {
        let v = self.resolve(vertex)?;
        Ok(self.degree_by_index(v))
    }

    pub fn degree_by_index(&self, v: usize) -> u64 {
        self.adjacency[v].values().sum()
    }

    /// Fraction of distinct-neighbor pairs that are themselves adjacent;
    /// 0 for fewer than two distinct neighbors.
    pub fn clustering_coefficient<F: Scalar>(&self, vertex: &str) -> Result<F> {
        let v = self.resolve(vertex)?;
        Ok(self.clustering_by_index(v))
    }

    pub fn clustering_by_index<F: Scalar>(&self, v: usize) -> F {
        let neighbors: Vec<usize> = self.adjacency[v].keys().copied().collect();
        let k = neighbors.len();
        if k < 2 {
            return F::zero();
        }
        let mut closed = 0u64;
        for (i, &u) in neighbors.iter().enumerate() {
            for &w in &neighbors[i + 1..] {
                if self.adjacency[u].contains_key(&w) {
                    closed += 1;
                }
            }
        }
        let pairs = (k * (k - 1) / 2) as u64;
        F::from_f64_lossy(closed as f64) / F::from_f64_lossy(pairs as f64)
    }

    /// Degree and clustering coefficient for every vertex, in vertex
    /// order.
    pub fn vertex_features<F: Scalar>(&self) -> Vec<(String, VertexFeatures<F>)> {
        (0..self.vertex_count())
            .map(|v| {
                (
                    self.names[v].clone(),
                    VertexFeatures {
                        degree: self.degree_by_index(v),
                        clustering: self.clustering_by_index(v),
                    },
                )
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexFeatures<F> {
    pub degree: u64,
    pub clustering: F,
}

/// Load an edge list: one `source,target` pair per line (comma or
/// whitespace separated). A `source,target` header line is skipped.
/// Parallel edges accumulate multiplicity; direction is collapsed to
/// undirected incidence. Self-loops and malformed lines are rejected with
/// their line number. An empty file is an empty graph.
pub fn load_edges(path: impl AsRef<Path>) -> Result<MultiGraph> {
    let file = File::open(path.as_ref())?;
    read_edges(file)
}

pub fn read_edges<R: Read>(reader: R) -> Result<MultiGraph> {
    let mut graph = MultiGraph::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if line_no == 1 && trimmed.to_ascii_lowercase().replace(' ', "") == "source,target" {
            continue;
        }
        let fields: Vec<&str> = if trimmed.contains(',') {
            trimmed.split(',').map(str::trim).collect()
        } else {
            trimmed.split_whitespace().collect()
        };
        if fields.len() != 2 || fields.iter().any(|f| f.is_empty()) {
            return Err(Error::Parse {
                row: line_no,
                message: format!("expected a source,target pair, got {trimmed:?}"),
            });
        }
        graph.add_edge(fields[0], fields[1]).map_err(|e| match e {
            Error::SelfLoop { vertex, .. } => Error::SelfLoop { line: line_no, vertex },
            other => other,
        })?;
    }
    Ok(graph)
}

/// One binning rule: a degree interval `[degree_min, degree_max)`
/// (`degree_max = None` means unbounded) and an inclusive clustering
/// interval `[c_min, c_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinRule<F> {
    pub label: ClassLabel,
    pub degree_min: u64,
    pub degree_max: Option<u64>,
    pub c_min: F,
    pub c_max: F,
}

/// Ordered binning rules whose degree intervals partition `[0, inf)`.
///
/// A vertex is matched by degree first; if its clustering coefficient
/// falls outside the matched rule's interval it is reported out-of-range
/// rather than silently dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassBinning<F> {
    rules: Vec<BinRule<F>>,
}

impl<F: Scalar> ClassBinning<F> {
    pub fn new(rules: Vec<BinRule<F>>) -> Result<Self> {
        if rules.is_empty() {
            return Err(Error::InvalidParameter("binning needs at least one rule".into()));
        }
        let mut sorted = rules;
        sorted.sort_by_key(|r| r.degree_min);
        if sorted[0].degree_min != 0 {
            return Err(Error::InvalidParameter(
                "degree intervals must start at 0".into(),
            ));
        }
        for i in 0..sorted.len() {
            let r = &sorted[i];
            if let Some(max) = r.degree_max {
                if max <= r.degree_min {
                    return Err(Error::InvalidParameter(format!(
                        "empty degree interval [{}, {max}) in rule {:?}",
                        r.degree_min,
                        r.label.as_str()
                    )));
                }
                match sorted.get(i + 1) {
                    Some(next) if next.degree_min == max => {}
                    _ => {
                        return Err(Error::InvalidParameter(format!(
                            "degree intervals do not cover [{max}, ...)"
                        )));
                    }
                }
            } else if i + 1 != sorted.len() {
                return Err(Error::InvalidParameter(
                    "only the last rule may have an unbounded degree interval".into(),
                ));
            }
            if !(r.c_min >= F::zero() && r.c_min <= r.c_max && r.c_max <= F::one()) {
                return Err(Error::InvalidParameter(format!(
                    "clustering interval [{}, {}] of rule {:?} must lie within [0, 1]",
                    r.c_min,
                    r.c_max,
                    r.label.as_str()
                )));
            }
        }
        if sorted.last().unwrap().degree_max.is_some() {
            return Err(Error::InvalidParameter(
                "last degree interval must be unbounded".into(),
            ));
        }
        Ok(Self { rules: sorted })
    }

    /// The five-class risk binning used by default: degree bands
    /// [0,2), [2,4), [4,6), [6,10), [10,inf) with clustering caps
    /// 1, 1, 0.417, 0.367 and 0.28.
    pub fn default_risk_bins() -> Self {
        let rule = |label: &str, lo: u64, hi: Option<u64>, c_max: f64| BinRule {
            label: ClassLabel::new(label).unwrap(),
            degree_min: lo,
            degree_max: hi,
            c_min: F::zero(),
            c_max: F::from_f64_lossy(c_max),
        };
        Self::new(vec![
            rule("1", 0, Some(2), 1.0),
            rule("2", 2, Some(4), 1.0),
            rule("3", 4, Some(6), 0.417),
            rule("4", 6, Some(10), 0.367),
            rule("5", 10, None, 0.28),
        ])
        .unwrap()
    }

    pub fn rules(&self) -> &[BinRule<F>] {
        &self.rules
    }

    /// Class for a (degree, clustering) pair, or `None` when the
    /// clustering coefficient falls outside the degree-matched rule.
    pub fn bin(&self, degree: u64, clustering: F) -> Option<&ClassLabel> {
        let rule = self
            .rules
            .iter()
            .find(|r| degree >= r.degree_min && r.degree_max.is_none_or(|max| degree < max))?;
        if clustering >= rule.c_min && clustering <= rule.c_max {
            Some(&rule.label)
        } else {
            None
        }
    }
}

/// A vertex with its features and binning outcome; `class` is `None` when
/// the clustering coefficient fell outside the matched rule's interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinAssignment<F> {
    pub vertex: String,
    pub degree: u64,
    pub clustering: F,
    pub class: Option<ClassLabel>,
}

/// Bin every vertex; out-of-range vertices are reported, never dropped.
pub fn bin_vertices<F: Scalar>(
    features: &[(String, VertexFeatures<F>)],
    binning: &ClassBinning<F>,
) -> Vec<BinAssignment<F>> {
    features
        .iter()
        .map(|(name, f)| BinAssignment {
            vertex: name.clone(),
            degree: f.degree,
            clustering: f.clustering,
            class: binning.bin(f.degree, f.clustering).cloned(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn parallel_edges_accumulate_multiplicity() {
        let g = read_edges("a,b\na,b\n".as_bytes()).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.total_multiplicity(), 2);
        assert_eq!(g.degree_centrality("a").unwrap(), 2);
        assert_eq!(g.degree_centrality("b").unwrap(), 2);
    }

    #[test]
    fn empty_file_is_empty_graph() {
        let g = read_edges("".as_bytes()).unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.total_multiplicity(), 0);
    }

    #[test]
    fn self_loop_names_the_line() {
        let err = read_edges("a,b\nc,c\n".as_bytes()).unwrap_err();
        match err {
            Error::SelfLoop { line, vertex } => {
                assert_eq!(line, 2);
                assert_eq!(vertex, "c");
            }
            other => panic!("expected self-loop, got {other:?}"),
        }
    }

    #[test]
    fn malformed_line_is_parse_error() {
        let err = read_edges("a,b\njunk\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { row: 2, .. }));
        let err = read_edges("a,b,c\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { row: 1, .. }));
    }

    #[test]
    fn header_line_skipped_and_whitespace_pairs_accepted() {
        let g = read_edges("source,target\na b\nb c\n".as_bytes()).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.degree_centrality("b").unwrap(), 2);
    }

    #[test]
    fn isolated_vertex_has_degree_zero() {
        let mut g = MultiGraph::new();
        g.add_vertex("lonely");
        assert_eq!(g.degree_centrality("lonely").unwrap(), 0);
        assert_eq!(g.clustering_coefficient::<f64>("lonely").unwrap(), 0.0);
        assert!(g.degree_centrality("ghost").is_err());
    }

    #[test]
    fn triangle_with_doubled_edge() {
        // Triangle a-b-c with the a-b edge doubled: D(a) = 2 + 1 = 3.
        let g = read_edges("a,b\na,b\nb,c\nc,a\n".as_bytes()).unwrap();
        assert_eq!(g.degree_centrality("a").unwrap(), 3);
        assert_eq!(g.degree_centrality("c").unwrap(), 2);
        // Clustering stays on the simple graph: still a full triangle.
        for v in ["a", "b", "c"] {
            assert_eq!(g.clustering_coefficient::<f64>(v).unwrap(), 1.0);
        }
    }

    #[test]
    fn star_center_has_zero_clustering() {
        let g = read_edges("hub,l1\nhub,l2\nhub,l3\n".as_bytes()).unwrap();
        assert_eq!(g.clustering_coefficient::<f64>("hub").unwrap(), 0.0);
        assert_eq!(g.degree_centrality("hub").unwrap(), 3);
    }

    #[test]
    fn one_closed_pair_of_three_is_a_third() {
        let g = read_edges("v,a\nv,b\nv,c\na,b\n".as_bytes()).unwrap();
        let c: f64 = g.clustering_coefficient("v").unwrap();
        assert_relative_eq!(c, 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn degree_sum_equals_twice_total_multiplicity() {
        let g = read_edges("a,b\na,b\nb,c\nc,a\nd,a\nd,b\nd,b\n".as_bytes()).unwrap();
        let sum: u64 = (0..g.vertex_count()).map(|v| g.degree_by_index(v)).sum();
        assert_eq!(sum, 2 * g.total_multiplicity());
    }

    #[test]
    fn default_risk_bins_map_degree_bands() {
        let bins = ClassBinning::<f64>::default_risk_bins();
        assert_eq!(bins.bin(3, 0.5).unwrap().as_str(), "2");
        assert_eq!(bins.bin(12, 0.1).unwrap().as_str(), "5");
        assert_eq!(bins.bin(0, 0.0).unwrap().as_str(), "1");
        assert_eq!(bins.bin(1, 1.0).unwrap().as_str(), "1");
        // Degree matches class 3 but clustering exceeds its cap.
        assert!(bins.bin(5, 0.9).is_none());
    }

    #[test]
    fn bin_vertices_reports_everything() {
        let g = read_edges("a,b\na,b\nb,c\nc,a\n".as_bytes()).unwrap();
        let features = g.vertex_features::<f64>();
        let bins = ClassBinning::<f64>::default_risk_bins();
        let assigned = bin_vertices(&features, &bins);
        assert_eq!(assigned.len(), g.vertex_count());
        let binned = assigned.iter().filter(|a| a.class.is_some()).count();
        let out = assigned.iter().filter(|a| a.class.is_none()).count();
        assert_eq!(binned + out, g.vertex_count());
    }

    #[test]
    fn binning_validation_rejects_gaps() {
        let rule = |label: &str, lo: u64, hi: Option<u64>| BinRule {
            label: ClassLabel::new(label).unwrap(),
            degree_min: lo,
            degree_max: hi,
            c_min: 0.0,
            c_max: 1.0,
        };
        assert!(ClassBinning::new(vec![rule("1", 0, Some(2)), rule("2", 3, None)]).is_err());
        assert!(ClassBinning::new(vec![rule("1", 1, None)]).is_err());
        assert!(ClassBinning::new(vec![rule("1", 0, Some(2))]).is_err());
        assert!(ClassBinning::new(vec![rule("1", 0, Some(2)), rule("2", 2, None)]).is_ok());
    }
}

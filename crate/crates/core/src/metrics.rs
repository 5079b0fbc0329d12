//! Representativeness, classification quality, distributional agreement
//! and variability measures.
//!
//! One quantile rule is used everywhere: rank midpoints. A sorted sample
//! of size `n` places its `r`-th value at probability position
//! `(r - 0.5) / n`; quantiles invert that map with linear interpolation.

use serde::{Deserialize, Serialize};

use crate::classifier::PosteriorTable;
use crate::dataset::ClassLabel;
use crate::error::{Error, Result};
use crate::sampling::{ClassPosteriorDistribution, EvidenceSet};
use crate::Scalar;

// ---------------------------------------------------------------------------
// Representativeness index
// ---------------------------------------------------------------------------

/// Representativeness index of a drawn evidence set within its class.
///
/// Let `N` be the class size and `r_1 < ... < r_M` the class ranks of the
/// drawn members (ascending by posterior, ties by record index). The index
/// compares the drawn sample's rank-midpoint CDF against the class
/// rank-midpoint positions:
///
/// ```text
/// RI = 1 - [12N / (4N^2 - 1)] * sum_j | (2j - 1)/(2M) - (2 r_j - 1)/(2N) |
/// ```
///
/// Drawing the whole class makes every term vanish, so RI is exactly 1;
/// any partial draw scores below 1 and the index never drops below 0.
/// An empty draw has no defined index and is reported as an error.
pub fn representativeness_index<F: Scalar>(
    dist: &ClassPosteriorDistribution<F>,
    drawn: &EvidenceSet<F>,
) -> Result<F> {
    ri_for_indices(dist, &drawn.indices)
}

pub(crate) fn ri_for_indices<F: Scalar>(
    dist: &ClassPosteriorDistribution<F>,
    indices: &[usize],
) -> Result<F> {
    if indices.is_empty() {
        return Err(Error::EmptyEvidence);
    }
    let mut ranks = Vec::with_capacity(indices.len());
    for &idx in indices {
        let rank = dist.rank_of(idx).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "record {idx} is not a member of class {:?}",
                dist.class().as_str()
            ))
        })?;
        ranks.push(rank);
    }
    ranks.sort_unstable();
    if ranks.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("duplicate evidence member".into()));
    }
    let n = dist.len();
    let m = ranks.len();
    let two_n = F::from_f64_lossy(2.0) * F::from_count(n);
    let two_m = F::from_f64_lossy(2.0) * F::from_count(m);
    let mut deviation = F::zero();
    for (j, &r) in ranks.iter().enumerate() {
        let drawn_pos = F::from_count(2 * (j + 1) - 1) / two_m;
        let class_pos = F::from_count(2 * r - 1) / two_n;
        deviation += (drawn_pos - class_pos).abs();
    }
    let nf = F::from_count(n);
    let prefactor = F::from_f64_lossy(12.0) * nf
        / (F::from_f64_lossy(4.0) * nf * nf - F::one());
    Ok(F::one() - prefactor * deviation)
}

// ---------------------------------------------------------------------------
// Confusion matrix and derived metrics
// ---------------------------------------------------------------------------

/// Square count matrix indexed by (true class, predicted class) in a fixed
/// label order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    labels: Vec<ClassLabel>,
    counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    /// `counts()[t][p]`: records of true class `t` predicted as `p`.
    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Every entry divided by the total record count.
    pub fn normalized<F: Scalar>(&self) -> Vec<Vec<F>> {
        let total = F::from_f64_lossy(self.total() as f64);
        self.counts
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&c| F::from_f64_lossy(c as f64) / total)
                    .collect()
            })
            .collect()
    }

    /// One-vs-rest collapse for `positive`: (tp, fn, fp, tn).
    fn collapse(&self, positive: usize) -> (u64, u64, u64, u64) {
        let tp = self.counts[positive][positive];
        let fn_: u64 = self.counts[positive]
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != positive)
            .map(|(_, &c)| c)
            .sum();
        let fp: u64 = self
            .counts
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != positive)
            .map(|(_, row)| row[positive])
            .sum();
        let tn = self.total() - tp - fn_ - fp;
        (tp, fn_, fp, tn)
    }
}

/// Count predictions against the truth. Truth labels must belong to the
/// table's class set.
pub fn confusion<F: Scalar>(
    table: &PosteriorTable<F>,
    truth: &[ClassLabel],
) -> Result<ConfusionMatrix> {
    if table.len() != truth.len() {
        return Err(Error::InvalidParameter(format!(
            "{} predictions but {} truth labels",
            table.len(),
            truth.len()
        )));
    }
    let labels = table.class_labels().to_vec();
    let mut counts = vec![vec![0u64; labels.len()]; labels.len()];
    for (i, t) in truth.iter().enumerate() {
        let ti = labels
            .iter()
            .position(|l| l == t)
            .ok_or_else(|| Error::UnknownLabel(t.as_str().to_string()))?;
        counts[ti][table.predicted_index(i)] += 1;
    }
    Ok(ConfusionMatrix { labels, counts })
}

/// Build a confusion matrix directly from counts (label order fixed).
pub fn confusion_from_counts(labels: Vec<ClassLabel>, counts: Vec<Vec<u64>>) -> Result<ConfusionMatrix> {
    if counts.len() != labels.len() || counts.iter().any(|row| row.len() != labels.len()) {
        return Err(Error::InvalidParameter("confusion matrix must be square over the labels".into()));
    }
    Ok(ConfusionMatrix { labels, counts })
}

/// The five classification ratios. A `None` marks a ratio whose
/// denominator was zero (undefined, flagged rather than thrown).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinaryMetrics<F> {
    pub accuracy: Option<F>,
    pub precision: Option<F>,
    pub recall: Option<F>,
    pub specificity: Option<F>,
    pub f1: Option<F>,
}

/// One-vs-rest metrics for `positive`.
pub fn binary_metrics<F: Scalar>(
    cm: &ConfusionMatrix,
    positive: &ClassLabel,
) -> Result<BinaryMetrics<F>> {
    let p = cm
        .labels()
        .iter()
        .position(|l| l == positive)
        .ok_or_else(|| Error::UnknownLabel(positive.as_str().to_string()))?;
    let (tp, fn_, fp, tn) = cm.collapse(p);
    Ok(metrics_from_counts(tp, fn_, fp, tn))
}

fn metrics_from_counts<F: Scalar>(tp: u64, fn_: u64, fp: u64, tn: u64) -> BinaryMetrics<F> {
    let count = |v: u64| F::from_f64_lossy(v as f64);
    let ratio = |num: u64, den: u64| {
        if den == 0 {
            None
        } else {
            Some(count(num) / count(den))
        }
    };
    let accuracy = ratio(tp + tn, tp + tn + fp + fn_);
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let specificity = ratio(tn, tn + fp);
    let f1 = match (precision, recall) {
        (Some(p), Some(r)) if p + r > F::zero() => {
            Some(F::from_f64_lossy(2.0) * p * r / (p + r))
        }
        _ => None,
    };
    BinaryMetrics { accuracy, precision, recall, specificity, f1 }
}

/// Macro average of the one-vs-rest metrics over every class. A metric is
/// undefined for the macro view when it is undefined for any class.
pub fn macro_metrics<F: Scalar>(cm: &ConfusionMatrix) -> Result<BinaryMetrics<F>> {
    let per_class: Vec<BinaryMetrics<F>> = cm
        .labels()
        .iter()
        .map(|l| binary_metrics(cm, l))
        .collect::<Result<_>>()?;
    let n = F::from_count(per_class.len());
    let avg = |pick: fn(&BinaryMetrics<F>) -> Option<F>| {
        per_class
            .iter()
            .map(pick)
            .try_fold(F::zero(), |acc, v| v.map(|v| acc + v))
            .map(|sum| sum / n)
    };
    Ok(BinaryMetrics {
        accuracy: avg(|m| m.accuracy),
        precision: avg(|m| m.precision),
        recall: avg(|m| m.recall),
        specificity: avg(|m| m.specificity),
        f1: avg(|m| m.f1),
    })
}

// ---------------------------------------------------------------------------
// ROC / AUC
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocPoint<F> {
    /// Decision threshold producing this point; `None` for the (0, 0)
    /// anchor above every score.
    pub threshold: Option<F>,
    pub false_positive_rate: F,
    pub true_positive_rate: F,
}

/// ROC curve from (0,0) to (1,1) with its trapezoid-rule AUC. Equal scores
/// are grouped into a single threshold step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocCurve<F> {
    pub points: Vec<RocPoint<F>>,
    pub auc: F,
}

/// Sweep thresholds over the positive-class scores.
///
/// Needs at least one positive and one negative record.
pub fn roc_curve<F: Scalar>(scores: &[F], is_positive: &[bool]) -> Result<RocCurve<F>> {
    if scores.len() != is_positive.len() {
        return Err(Error::InvalidParameter(format!(
            "{} scores but {} labels",
            scores.len(),
            is_positive.len()
        )));
    }
    let pos_total = is_positive.iter().filter(|&&p| p).count();
    let neg_total = is_positive.len() - pos_total;
    if pos_total == 0 || neg_total == 0 {
        return Err(Error::SingleClassTruth);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap());

    let pos_total_f = F::from_count(pos_total);
    let neg_total_f = F::from_count(neg_total);
    let mut points = vec![RocPoint {
        threshold: None,
        false_positive_rate: F::zero(),
        true_positive_rate: F::zero(),
    }];
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut i = 0;
    while i < order.len() {
        let threshold = scores[order[i]];
        // Consume the whole tie group at this threshold in one step.
        while i < order.len() && scores[order[i]] == threshold {
            if is_positive[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        points.push(RocPoint {
            threshold: Some(threshold),
            false_positive_rate: F::from_count(fp) / neg_total_f,
            true_positive_rate: F::from_count(tp) / pos_total_f,
        });
    }
    let mut auc = F::zero();
    let half = F::from_f64_lossy(0.5);
    for w in points.windows(2) {
        let dx = w[1].false_positive_rate - w[0].false_positive_rate;
        auc += dx * (w[0].true_positive_rate + w[1].true_positive_rate) * half;
    }
    Ok(RocCurve { points, auc })
}

/// One-vs-rest ROC AUC per class plus the macro average over the classes
/// with both positives and negatives present (`None` otherwise).
#[allow(clippy::type_complexity)]
pub fn one_vs_rest_auc<F: Scalar>(
    table: &PosteriorTable<F>,
    truth: &[ClassLabel],
) -> Result<(Vec<(ClassLabel, Option<F>)>, Option<F>)> {
    if table.len() != truth.len() {
        return Err(Error::InvalidParameter(format!(
            "{} predictions but {} truth labels",
            table.len(),
            truth.len()
        )));
    }
    let mut per_class = Vec::new();
    let mut defined = Vec::new();
    for label in table.class_labels() {
        let scores = table.class_column(label)?;
        let is_positive: Vec<bool> = truth.iter().map(|t| t == label).collect();
        let auc = match roc_curve(&scores, &is_positive) {
            Ok(curve) => Some(curve.auc),
            Err(Error::SingleClassTruth) => None,
            Err(e) => return Err(e),
        };
        if let Some(a) = auc {
            defined.push(a);
        }
        per_class.push((label.clone(), auc));
    }
    let macro_auc = if defined.is_empty() {
        None
    } else {
        Some(defined.iter().fold(F::zero(), |a, &b| a + b) / F::from_count(defined.len()))
    };
    Ok((per_class, macro_auc))
}

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov
// ---------------------------------------------------------------------------

/// Two-sample KS statistic: the largest absolute gap between the two
/// empirical CDFs over the merged support.
pub fn ks_statistic<F: Scalar>(a: &[F], b: &[F]) -> Result<F> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput("KS statistic needs two non-empty samples".into()));
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    ys.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let na = F::from_count(xs.len());
    let nb = F::from_count(ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = F::zero();
    while i < xs.len() || j < ys.len() {
        let v = match (xs.get(i), ys.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => break,
        };
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        let fa = F::from_count(i) / na;
        let fb = F::from_count(j) / nb;
        d = d.max((fa - fb).abs());
    }
    Ok(d)
}

/// Critical value `1.22 / sqrt(m)` with `m` the evidence-sample size.
pub fn ks_critical<F: Scalar>(m: usize) -> F {
    assert!(m > 0, "critical-value sample size must be positive");
    F::from_f64_lossy(1.22) / F::from_count(m).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult<F> {
    pub d: F,
    pub critical: F,
    pub within_critical: bool,
}

/// KS statistic together with the critical value for sample size `m`.
pub fn ks_test<F: Scalar>(a: &[F], b: &[F], critical_m: usize) -> Result<KsResult<F>> {
    if critical_m == 0 {
        return Err(Error::InvalidParameter("critical-value sample size must be >= 1".into()));
    }
    let d = ks_statistic(a, b)?;
    let critical = ks_critical(critical_m);
    Ok(KsResult { d, critical, within_critical: d < critical })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeKs<F> {
    pub attribute: String,
    #[serde(flatten)]
    pub result: KsResult<F>,
}

/// Per-attribute KS statistics with the maximum as the summary value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultivariateKs<F> {
    pub per_attribute: Vec<AttributeKs<F>>,
    pub max_d: F,
    pub critical: F,
    pub within_critical: bool,
}

pub fn ks_multivariate<F: Scalar>(
    attributes: &[(&str, &[F], &[F])],
    critical_m: usize,
) -> Result<MultivariateKs<F>> {
    if attributes.is_empty() {
        return Err(Error::EmptyInput("no attributes for multivariate KS".into()));
    }
    let mut per_attribute = Vec::with_capacity(attributes.len());
    let mut max_d = F::zero();
    for (name, a, b) in attributes {
        let result = ks_test(a, b, critical_m)?;
        max_d = max_d.max(result.d);
        per_attribute.push(AttributeKs { attribute: name.to_string(), result });
    }
    let critical = ks_critical(critical_m);
    Ok(MultivariateKs { per_attribute, max_d, critical, within_critical: max_d < critical })
}

// ---------------------------------------------------------------------------
// Variability
// ---------------------------------------------------------------------------

/// Spread and shape summary of one attribute.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariabilityReport<F> {
    pub range: (F, F),
    pub standard_deviation: F,
    pub interquartile_range: F,
    /// Adjusted Fisher-Pearson skewness; undefined below 3 values or for
    /// constant data.
    pub skewness: Option<F>,
    /// `std / mean`; undefined when the mean is zero.
    pub coefficient_of_variation: Option<F>,
}

/// Rank-midpoint quantile of a sorted sample: position `h = n*p + 0.5`
/// interpolated linearly between order statistics, clamped at the ends.
pub fn quantile_rank_midpoint<F: Scalar>(sorted: &[F], p: F) -> F {
    debug_assert!(!sorted.is_empty());
    let n = sorted.len();
    let h = F::from_count(n) * p + F::from_f64_lossy(0.5);
    if h <= F::one() {
        return sorted[0];
    }
    if h >= F::from_count(n) {
        return sorted[n - 1];
    }
    let k = h.floor();
    let gamma = h - k;
    let k = k.to_usize().unwrap();
    sorted[k - 1] * (F::one() - gamma) + sorted[k] * gamma
}

/// Range, sample standard deviation (n-1), IQR (rank-midpoint quantiles),
/// adjusted Fisher-Pearson skewness and coefficient of variation.
pub fn variability<F: Scalar>(values: &[F]) -> Result<VariabilityReport<F>> {
    if values.len() < 2 {
        return Err(Error::EmptyInput(format!(
            "variability needs >= 2 values, got {}",
            values.len()
        )));
    }
    let n = values.len();
    let nf = F::from_count(n);
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let range = (sorted[0], sorted[n - 1]);

    // Moments accumulate over the sorted copy: one canonical summation
    // order, so permutations of the input give bit-identical reports.
    let mean = sorted.iter().fold(F::zero(), |a, &b| a + b) / nf;
    let m2 = sorted.iter().map(|&v| (v - mean) * (v - mean)).fold(F::zero(), |a, b| a + b) / nf;
    let m3 = sorted
        .iter()
        .map(|&v| (v - mean) * (v - mean) * (v - mean))
        .fold(F::zero(), |a, b| a + b)
        / nf;
    let sample_var = m2 * nf / (nf - F::one());
    let std = sample_var.sqrt();

    let q1 = quantile_rank_midpoint(&sorted, F::from_f64_lossy(0.25));
    let q3 = quantile_rank_midpoint(&sorted, F::from_f64_lossy(0.75));

    let skewness = if n >= 3 && m2 > F::zero() {
        let g1 = m3 / m2.powf(F::from_f64_lossy(1.5));
        let adjust = (nf * (nf - F::one())).sqrt() / (nf - F::from_f64_lossy(2.0));
        Some(g1 * adjust)
    } else {
        None
    };
    let coefficient_of_variation = if mean != F::zero() { Some(std / mean) } else { None };

    Ok(VariabilityReport {
        range,
        standard_deviation: std,
        interquartile_range: q3 - q1,
        skewness,
        coefficient_of_variation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::sampling::{item_based_sample, user_based_sample, PercentileBounds};
    use approx::assert_relative_eq;

    fn label(s: &str) -> ClassLabel {
        ClassLabel::new(s).unwrap()
    }

    fn dist(scores: &[f64]) -> ClassPosteriorDistribution<f64> {
        let members = scores.iter().enumerate().map(|(i, &s)| (i, s)).collect();
        ClassPosteriorDistribution::from_scores(label("c"), members, 0.5).unwrap()
    }

    #[test]
    fn ri_full_class_is_exactly_one_across_sizes() {
        let mut rng = SplitMix64::new(21);
        for n in [1usize, 2, 3, 7, 50, 200] {
            let scores: Vec<f64> = (0..n)
                .map(|_| 0.01 + 0.98 * rng.unit_f64())
                .collect();
            let d = dist(&scores);
            let full = user_based_sample(&d, PercentileBounds::new(0.0, 100.0).unwrap()).unwrap();
            assert_eq!(full.len(), n);
            let ri = representativeness_index(&d, &full).unwrap();
            assert!((ri - 1.0).abs() <= 1e-9, "RI {ri} for n={n}");
        }
    }

    #[test]
    fn ri_two_member_class_lower_member_by_hand() {
        // Spreadsheet-style evaluation: N=2, M=1, drawn rank r=1.
        // drawn position (2*1-1)/(2*1) = 0.5; class position (2*1-1)/(2*2)
        // = 0.25; prefactor 12*2/(4*4-1) = 1.6; RI = 1 - 1.6*0.25 = 0.6.
        let d = dist(&[0.4, 0.4]);
        let e = item_based_sample(&d, 0.1).unwrap();
        assert_eq!(e.len(), 2);
        let lower_only = ri_for_indices(&d, &[0]).unwrap();
        let expected = 1.0 - (12.0 * 2.0 / (4.0 * 4.0 - 1.0)) * ((0.5f64 - 0.25).abs());
        assert_relative_eq!(lower_only, expected, epsilon = 1e-15);
        assert_relative_eq!(lower_only, 0.6, epsilon = 1e-12);
    }

    #[test]
    fn ri_empty_draw_is_error() {
        let d = dist(&[0.2, 0.8]);
        assert!(matches!(ri_for_indices(&d, &[]), Err(Error::EmptyEvidence)));
    }

    #[test]
    fn ri_stays_in_unit_interval_on_random_draws() {
        let mut rng = SplitMix64::new(5);
        for _ in 0..300 {
            let n = 1 + (rng.below(60) as usize);
            let scores: Vec<f64> = (0..n).map(|_| 0.01 + 0.98 * rng.unit_f64()).collect();
            let d = dist(&scores);
            let mut drawn: Vec<usize> = (0..n).filter(|_| rng.below(2) == 0).collect();
            if drawn.is_empty() {
                drawn.push(rng.below(n as u64) as usize);
            }
            let ri = ri_for_indices(&d, &drawn).unwrap();
            assert!(ri <= 1.0 + 1e-9, "RI {ri} above 1");
            assert!(ri >= 0.0, "RI {ri} below 0");
        }
    }

    #[test]
    fn ri_rejects_non_members() {
        let d = dist(&[0.2, 0.8]);
        assert!(ri_for_indices(&d, &[5]).is_err());
    }

    fn table_from(
        labels: &[&str],
        predictions: &[&str],
    ) -> (PosteriorTable<f64>, Vec<ClassLabel>) {
        use crate::classifier;
        use crate::dataset::{AttributeSchema, Column, LabeledDataset, Record};
        // Train a tiny 1-attribute model whose decision boundary at 0 lets
        // us force each prediction via the record value.
        let schema = AttributeSchema::new(vec![Column::continuous("x")], "label").unwrap();
        let mut class_values = std::collections::BTreeMap::new();
        let mut distinct: Vec<&str> = Vec::new();
        for &l in labels.iter().chain(predictions) {
            if !distinct.contains(&l) {
                distinct.push(l);
            }
        }
        for (i, l) in distinct.iter().enumerate() {
            class_values.insert(*l, i as f64 * 10.0);
        }
        let mut train_records = Vec::new();
        let mut train_labels = Vec::new();
        for (l, v) in &class_values {
            for d in [-0.5, 0.5] {
                train_records.push(Record::new(
                    format!("t{}{}", l, train_records.len()),
                    vec![v + d],
                ));
                train_labels.push(label(l));
            }
        }
        let train = LabeledDataset::new(schema.clone(), train_records, train_labels).unwrap();
        let model = classifier::fit(&train).unwrap();
        // Evaluation records positioned at the center of the predicted class.
        let records: Vec<Record<f64>> = predictions
            .iter()
            .enumerate()
            .map(|(i, p)| Record::new(i.to_string(), vec![class_values[p]]))
            .collect();
        let eval_labels: Vec<ClassLabel> = labels.iter().map(|l| label(l)).collect();
        let eval = LabeledDataset::with_label_set(
            schema,
            records,
            eval_labels.clone(),
            distinct.iter().map(|l| label(l)).collect(),
        )
        .unwrap();
        (model.classify_all(&eval).unwrap(), eval_labels)
    }

    #[test]
    fn confusion_perfect_predictions_are_diagonal() {
        let (table, truth) = table_from(&["a", "a", "b", "b"], &["a", "a", "b", "b"]);
        let cm = confusion(&table, &truth).unwrap();
        assert_eq!(cm.total(), 4);
        for (i, row) in cm.counts().iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                assert_eq!(c, if i == j { 2 } else { 0 });
            }
        }
        let norm: Vec<Vec<f64>> = cm.normalized();
        let s: f64 = norm.iter().flatten().sum();
        assert_relative_eq!(s, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn confusion_single_error_lands_off_diagonal() {
        let (table, truth) = table_from(&["a", "a", "b", "b"], &["a", "b", "b", "b"]);
        let cm = confusion(&table, &truth).unwrap();
        let a = cm.labels().iter().position(|l| l.as_str() == "a").unwrap();
        let b = cm.labels().iter().position(|l| l.as_str() == "b").unwrap();
        assert_eq!(cm.counts()[a][b], 1);
        assert_eq!(cm.counts()[a][a], 1);
        assert_eq!(cm.counts()[b][b], 2);
        // Rows sum to the per-class truth counts.
        assert_eq!(cm.counts()[a].iter().sum::<u64>(), 2);
        assert_eq!(cm.counts()[b].iter().sum::<u64>(), 2);
    }

    #[test]
    fn binary_metrics_hand_counts() {
        let cm = confusion_from_counts(
            vec![label("pos"), label("neg")],
            vec![vec![43, 2], vec![1, 45]],
        )
        .unwrap();
        let m: BinaryMetrics<f64> = binary_metrics(&cm, &label("pos")).unwrap();
        assert_relative_eq!(m.accuracy.unwrap(), 88.0 / 91.0, epsilon = 1e-15);
        assert_relative_eq!(m.precision.unwrap(), 43.0 / 44.0, epsilon = 1e-15);
        assert_relative_eq!(m.recall.unwrap(), 43.0 / 45.0, epsilon = 1e-15);
        assert_relative_eq!(m.specificity.unwrap(), 45.0 / 46.0, epsilon = 1e-15);
        let p = 43.0 / 44.0;
        let r = 43.0 / 45.0;
        assert_relative_eq!(m.f1.unwrap(), 2.0 * p * r / (p + r), epsilon = 1e-15);
        assert_relative_eq!(m.accuracy.unwrap(), 0.967, epsilon = 1e-3);
        assert_relative_eq!(m.precision.unwrap(), 0.977, epsilon = 1e-3);
    }

    #[test]
    fn binary_metrics_all_correct_is_all_ones() {
        let cm = confusion_from_counts(
            vec![label("pos"), label("neg")],
            vec![vec![10, 0], vec![0, 7]],
        )
        .unwrap();
        let m: BinaryMetrics<f64> = binary_metrics(&cm, &label("pos")).unwrap();
        for v in [m.accuracy, m.precision, m.recall, m.specificity, m.f1] {
            assert_eq!(v.unwrap(), 1.0);
        }
    }

    #[test]
    fn precision_undefined_when_no_positive_predictions() {
        let cm = confusion_from_counts(
            vec![label("pos"), label("neg")],
            vec![vec![0, 3], vec![0, 5]],
        )
        .unwrap();
        let m: BinaryMetrics<f64> = binary_metrics(&cm, &label("pos")).unwrap();
        assert!(m.precision.is_none());
        assert!(m.f1.is_none());
        assert_eq!(m.recall.unwrap(), 0.0);
    }

    #[test]
    fn macro_metrics_average_over_classes() {
        let cm = confusion_from_counts(
            vec![label("a"), label("b"), label("c")],
            vec![vec![5, 1, 0], vec![0, 4, 1], vec![0, 0, 9]],
        )
        .unwrap();
        let macro_m: BinaryMetrics<f64> = macro_metrics(&cm).unwrap();
        let per: Vec<BinaryMetrics<f64>> = ["a", "b", "c"]
            .iter()
            .map(|l| binary_metrics(&cm, &label(l)).unwrap())
            .collect();
        let mean_recall: f64 = per.iter().map(|m| m.recall.unwrap()).sum::<f64>() / 3.0;
        assert_relative_eq!(macro_m.recall.unwrap(), mean_recall, epsilon = 1e-15);
    }

    #[test]
    fn roc_perfect_separation_has_auc_one() {
        let scores = [0.9, 0.8, 0.2, 0.1];
        let truth = [true, true, false, false];
        let curve = roc_curve(&scores, &truth).unwrap();
        assert_eq!(curve.auc, 1.0);
        assert_eq!(curve.points.first().unwrap().false_positive_rate, 0.0);
        assert_eq!(curve.points.last().unwrap().true_positive_rate, 1.0);
    }

    #[test]
    fn roc_constant_scores_give_half() {
        let scores = [0.5, 0.5, 0.5, 0.5];
        let truth = [true, false, true, false];
        let curve = roc_curve(&scores, &truth).unwrap();
        assert_relative_eq!(curve.auc, 0.5, epsilon = 1e-15);
        assert_eq!(curve.points.len(), 2);
    }

    #[test]
    fn roc_four_record_toy_is_three_quarters() {
        let scores = [0.9, 0.8, 0.4, 0.3];
        let truth = [true, false, true, false];
        let curve = roc_curve(&scores, &truth).unwrap();
        assert_relative_eq!(curve.auc, 0.75, epsilon = 1e-15);
    }

    #[test]
    fn roc_ties_grouped_matches_half_credit() {
        let scores = [0.9, 0.4, 0.4, 0.2];
        let truth = [true, true, false, false];
        let curve = roc_curve(&scores, &truth).unwrap();
        assert_relative_eq!(curve.auc, 0.875, epsilon = 1e-15);
    }

    #[test]
    fn roc_single_class_is_error() {
        assert!(matches!(
            roc_curve(&[0.4, 0.5], &[true, true]),
            Err(Error::SingleClassTruth)
        ));
    }

    /// Mann-Whitney pair counting with half credit for ties.
    fn mann_whitney(scores: &[f64], truth: &[bool]) -> f64 {
        let mut wins = 0.0;
        let mut pairs = 0.0;
        for (i, &pi) in truth.iter().enumerate() {
            if !pi {
                continue;
            }
            for (j, &pj) in truth.iter().enumerate() {
                if pj {
                    continue;
                }
                pairs += 1.0;
                if scores[i] > scores[j] {
                    wins += 1.0;
                } else if scores[i] == scores[j] {
                    wins += 0.5;
                }
            }
        }
        wins / pairs
    }

    #[test]
    fn roc_auc_equals_mann_whitney_smoke() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..50 {
            let n = 2 + rng.below(40) as usize;
            let scores: Vec<f64> = (0..n).map(|_| (rng.below(10) as f64) / 10.0).collect();
            let mut truth: Vec<bool> = (0..n).map(|_| rng.below(2) == 0).collect();
            truth[0] = true;
            truth[1] = false;
            let auc = roc_curve(&scores, &truth).unwrap().auc;
            let mw = mann_whitney(&scores, &truth);
            assert!((auc - mw).abs() < 1e-12, "auc {auc} vs mw {mw}");
        }
    }

    #[test]
    fn roc_points_are_monotone() {
        let mut rng = SplitMix64::new(17);
        let n = 60;
        let scores: Vec<f64> = (0..n).map(|_| rng.unit_f64()).collect();
        let mut truth: Vec<bool> = (0..n).map(|_| rng.below(2) == 0).collect();
        truth[0] = true;
        truth[1] = false;
        let curve = roc_curve(&scores, &truth).unwrap();
        for w in curve.points.windows(2) {
            assert!(w[1].false_positive_rate >= w[0].false_positive_rate);
            assert!(w[1].true_positive_rate >= w[0].true_positive_rate);
        }
    }

    #[test]
    fn ks_identical_samples_give_zero() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [4.0, 3.0, 2.0, 1.0];
        assert_eq!(ks_statistic(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn ks_disjoint_supports_give_one() {
        assert_eq!(ks_statistic(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap(), 1.0);
    }

    #[test]
    fn ks_critical_value_for_500() {
        let c: f64 = ks_critical(500);
        assert!((c - 0.05456).abs() < 1e-4);
        let r = ks_test(&[1.0, 2.0], &[1.0, 2.0], 500).unwrap();
        assert_eq!(r.critical, c);
        assert!(r.within_critical);
    }

    #[test]
    fn ks_is_symmetric_and_rank_invariant() {
        let mut rng = SplitMix64::new(31);
        for _ in 0..50 {
            let a: Vec<f64> = (0..20).map(|_| rng.unit_f64() * 10.0).collect();
            let b: Vec<f64> = (0..35).map(|_| rng.unit_f64() * 10.0).collect();
            let d1 = ks_statistic(&a, &b).unwrap();
            let d2 = ks_statistic(&b, &a).unwrap();
            assert_eq!(d1, d2);
            // Common strictly monotone transform.
            let ta: Vec<f64> = a.iter().map(|v| (v + 1.0).ln()).collect();
            let tb: Vec<f64> = b.iter().map(|v| (v + 1.0).ln()).collect();
            let d3 = ks_statistic(&ta, &tb).unwrap();
            assert!((d1 - d3).abs() < 1e-15);
        }
    }

    #[test]
    fn ks_lace_style_value() {
        // 0.25: the largest ECDF gap for these two samples.
        let a = [1.0, 1.0, 4.0, 4.0];
        let b = [1.0, 1.0, 1.0, 4.0];
        assert_relative_eq!(ks_statistic(&a, &b).unwrap(), 0.25, epsilon = 1e-12);
    }

    #[test]
    fn ks_empty_input_is_error() {
        assert!(ks_statistic::<f64>(&[], &[1.0]).is_err());
        assert!(ks_test(&[1.0], &[1.0], 0).is_err());
    }

    #[test]
    fn ks_multivariate_reports_max() {
        let pop_a = [1.0, 2.0, 3.0, 4.0];
        let ev_a = [1.0, 2.0, 3.0, 4.0];
        let pop_b = [1.0, 2.0, 3.0];
        let ev_b = [10.0, 11.0, 12.0];
        let mk = ks_multivariate(
            &[("a", &pop_a, &ev_a), ("b", &pop_b, &ev_b)],
            4,
        )
        .unwrap();
        assert_eq!(mk.per_attribute.len(), 2);
        assert_eq!(mk.max_d, 1.0);
        assert!(!mk.within_critical);
    }

    #[test]
    fn variability_one_to_five() {
        let v: VariabilityReport<f64> = variability(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(v.range, (1.0, 5.0));
        assert_relative_eq!(v.standard_deviation, 2.5f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(v.skewness.unwrap(), 0.0, epsilon = 1e-12);
        // Rank-midpoint quartiles: h1 = 1.75 -> 1.75, h3 = 4.25 -> 4.25.
        assert_relative_eq!(v.interquartile_range, 2.5, epsilon = 1e-12);
        assert_relative_eq!(
            v.coefficient_of_variation.unwrap(),
            2.5f64.sqrt() / 3.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn variability_constant_values() {
        let v: VariabilityReport<f64> = variability(&[5.0, 5.0, 5.0, 5.0]).unwrap();
        assert_eq!(v.standard_deviation, 0.0);
        assert_eq!(v.interquartile_range, 0.0);
        assert_eq!(v.coefficient_of_variation.unwrap(), 0.0);
        assert!(v.skewness.is_none());
    }

    #[test]
    fn variability_zero_mean_flags_cv() {
        let v: VariabilityReport<f64> = variability(&[-1.0, 1.0]).unwrap();
        assert!(v.coefficient_of_variation.is_none());
    }

    #[test]
    fn variability_is_permutation_invariant() {
        let a = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0];
        let mut b = a;
        b.reverse();
        let va: VariabilityReport<f64> = variability(&a).unwrap();
        let vb = variability(&b).unwrap();
        assert_eq!(va, vb);
    }

    #[test]
    fn variability_too_few_values_is_error() {
        assert!(variability::<f64>(&[1.0]).is_err());
    }
}

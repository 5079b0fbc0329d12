//! Naive Bayes fit, posterior scoring and argmax decisions.
//!
//! Likelihood families follow the schema: Gaussian per continuous
//! attribute, one multinomial over all count attributes jointly. Posterior
//! evaluation happens in log space and is normalized with log-sum-exp, so
//! products over thousands of attribute terms never underflow to zero.

use serde::{Deserialize, Serialize};

use crate::dataset::{AttributeSchema, ClassLabel, ColumnKind, LabeledDataset, Record};
use crate::error::{Error, Result};
use crate::Scalar;

/// Serialized model format version.
pub const MODEL_FORMAT_VERSION: u32 = 1;

/// Relative variance floor: `1e-9 * (attribute range)^2`.
const VARIANCE_FLOOR_REL: f64 = 1e-9;
/// Absolute variance floor for all-constant attributes.
const VARIANCE_FLOOR_ABS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams<F> {
    pub mean: F,
    pub variance: F,
}

/// Likelihood parameters of one (class, attribute) pair.
///
/// For a count attribute the block is that attribute's share of the
/// class's multinomial: `log_prob` of drawing this token, with the
/// per-class token probabilities summing to 1 across count attributes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LikelihoodParams<F> {
    Gaussian(GaussianParams<F>),
    Multinomial { log_prob: F },
}

/// A fitted Naive Bayes model: class priors plus one likelihood block per
/// (class, attribute) pair, in schema column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayesModel<F> {
    format_version: u32,
    schema: AttributeSchema,
    labels: Vec<ClassLabel>,
    log_priors: Vec<F>,
    /// `class_params[c][a]` is the block for class `c`, attribute `a`.
    class_params: Vec<Vec<LikelihoodParams<F>>>,
    alpha: F,
}

/// Per-record posterior probabilities over the model's classes, plus the
/// argmax decision for each record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorTable<F> {
    class_labels: Vec<ClassLabel>,
    posteriors: Vec<Vec<F>>,
    predicted: Vec<usize>,
}

impl<F: Scalar> PosteriorTable<F> {
    /// Class order of the posterior columns.
    pub fn class_labels(&self) -> &[ClassLabel] {
        &self.class_labels
    }

    /// One probability row per record, columns in `class_labels` order.
    pub fn posteriors(&self) -> &[Vec<F>] {
        &self.posteriors
    }

    pub fn predicted_index(&self, record: usize) -> usize {
        self.predicted[record]
    }

    pub fn predicted_label(&self, record: usize) -> &ClassLabel {
        &self.class_labels[self.predicted[record]]
    }

    pub fn predicted_labels(&self) -> Vec<ClassLabel> {
        self.predicted
            .iter()
            .map(|&i| self.class_labels[i].clone())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.posteriors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.posteriors.is_empty()
    }

    pub fn class_index(&self, label: &ClassLabel) -> Option<usize> {
        self.class_labels.iter().position(|l| l == label)
    }

    /// Posterior column for one class.
    pub fn class_column(&self, label: &ClassLabel) -> Result<Vec<F>> {
        let idx = self
            .class_index(label)
            .ok_or_else(|| Error::UnknownLabel(label.as_str().to_string()))?;
        Ok(self.posteriors.iter().map(|row| row[idx]).collect())
    }
}

/// Fit with the default Laplace smoothing `alpha = 1`.
pub fn fit<F: Scalar>(train: &LabeledDataset<F>) -> Result<NaiveBayesModel<F>> {
    fit_with_alpha(train, F::one())
}

/// Fit a Naive Bayes model.
///
/// Priors are class frequencies. Gaussian blocks hold the per-class mean
/// and variance (maximum-likelihood `n` denominator), with the variance
/// floored at `max(1e-9 * range^2, 1e-12)` per attribute so all-constant
/// attributes stay usable. Multinomial token probabilities are
/// Laplace-smoothed: `(count + alpha) / (total + alpha * V)` with `V` the
/// number of count attributes.
pub fn fit_with_alpha<F: Scalar>(train: &LabeledDataset<F>, alpha: F) -> Result<NaiveBayesModel<F>> {
    if !(alpha > F::zero()) {
        return Err(Error::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
    }
    let labels = train.label_set().to_vec();
    let populated = labels
        .iter()
        .filter(|l| train.labels().iter().any(|x| x == *l))
        .count();
    if populated < 2 {
        return Err(Error::NeedTwoClasses(populated));
    }
    let members: Vec<Vec<usize>> = labels
        .iter()
        .map(|l| train.class_members(l))
        .collect::<Result<_>>()?;
    if let Some(empty) = members.iter().position(|m| m.is_empty()) {
        return Err(Error::EmptyClass(labels[empty].as_str().to_string()));
    }

    let schema = train.schema().clone();
    let n_total = F::from_count(train.len());
    let log_priors: Vec<F> = members
        .iter()
        .map(|m| (F::from_count(m.len()) / n_total).ln())
        .collect();

    // Per-attribute range over the whole training set, for variance floors.
    let arity = schema.arity();
    let mut floors = vec![F::from_f64_lossy(VARIANCE_FLOOR_ABS); arity];
    for (a, floor) in floors.iter_mut().enumerate() {
        let mut lo = F::infinity();
        let mut hi = F::neg_infinity();
        for r in train.records() {
            lo = lo.min(r.values[a]);
            hi = hi.max(r.values[a]);
        }
        let range = hi - lo;
        *floor = (range * range * F::from_f64_lossy(VARIANCE_FLOOR_REL))
            .max(F::from_f64_lossy(VARIANCE_FLOOR_ABS));
    }

    let count_attrs = F::from_count(
        schema.columns().iter().filter(|c| c.kind == ColumnKind::Count).count(),
    );

    let mut class_params = Vec::with_capacity(labels.len());
    for member_idx in &members {
        let m = F::from_count(member_idx.len());
        // Total count mass of this class across all count attributes.
        let mut count_total = F::zero();
        for &i in member_idx {
            for (a, col) in schema.columns().iter().enumerate() {
                if col.kind == ColumnKind::Count {
                    count_total += train.records()[i].values[a];
                }
            }
        }
        let mut params = Vec::with_capacity(arity);
        for (a, col) in schema.columns().iter().enumerate() {
            match col.kind {
                ColumnKind::Continuous => {
                    let mut mean = F::zero();
                    for &i in member_idx {
                        mean += train.records()[i].values[a];
                    }
                    mean /= m;
                    let mut var = F::zero();
                    for &i in member_idx {
                        let d = train.records()[i].values[a] - mean;
                        var += d * d;
                    }
                    var = (var / m).max(floors[a]);
                    params.push(LikelihoodParams::Gaussian(GaussianParams { mean, variance: var }));
                }
                ColumnKind::Count => {
                    let mut count = F::zero();
                    for &i in member_idx {
                        count += train.records()[i].values[a];
                    }
                    let prob = (count + alpha) / (count_total + alpha * count_attrs);
                    params.push(LikelihoodParams::Multinomial { log_prob: prob.ln() });
                }
            }
        }
        class_params.push(params);
    }

    Ok(NaiveBayesModel {
        format_version: MODEL_FORMAT_VERSION,
        schema,
        labels,
        log_priors,
        class_params,
        alpha,
    })
}

impl<F: Scalar> NaiveBayesModel<F> {
    pub fn schema(&self) -> &AttributeSchema {
        &self.schema
    }

    /// Ordered class labels; argmax ties break toward the first.
    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    pub fn log_priors(&self) -> &[F] {
        &self.log_priors
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn params(&self, class: usize) -> &[LikelihoodParams<F>] {
        &self.class_params[class]
    }

    pub fn class_index(&self, label: &ClassLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn check_record(&self, x: &Record<F>) -> Result<()> {
        if x.values.len() != self.schema.arity() {
            return Err(Error::Schema(format!(
                "record has {} values, model schema expects {}",
                x.values.len(),
                self.schema.arity()
            )));
        }
        for (c, &v) in x.values.iter().enumerate() {
            self.schema.check_value(c, v)?;
        }
        Ok(())
    }

    /// Unnormalized log posterior per class: `log Pr(Ci) + sum_k log
    /// Pr(x_k | Ci)`. Shifting every entry by a constant (equivalently,
    /// scaling priors and likelihoods) never changes the argmax.
    pub fn log_scores(&self, x: &Record<F>) -> Result<Vec<F>> {
        self.check_record(x)?;
        let mut scores = Vec::with_capacity(self.labels.len());
        for (c, params) in self.class_params.iter().enumerate() {
            let mut s = self.log_priors[c];
            for (a, p) in params.iter().enumerate() {
                let v = x.values[a];
                match p {
                    LikelihoodParams::Gaussian(g) => {
                        let d = v - g.mean;
                        let two = F::from_f64_lossy(2.0);
                        s += -(d * d) / (two * g.variance)
                            - (two * F::PI() * g.variance).ln() / two;
                    }
                    LikelihoodParams::Multinomial { log_prob } => {
                        s += v * *log_prob;
                    }
                }
            }
            scores.push(s);
        }
        Ok(scores)
    }

    /// Posterior probabilities over classes, normalized with log-sum-exp.
    pub fn posterior(&self, x: &Record<F>) -> Result<Vec<F>> {
        let scores = self.log_scores(x)?;
        Ok(normalize_log_scores(&scores))
    }

    /// Argmax class; ties break toward the first label in model order.
    pub fn predict(&self, x: &Record<F>) -> Result<&ClassLabel> {
        let scores = self.log_scores(x)?;
        Ok(&self.labels[argmax_first(&scores)])
    }

    /// Classify every record, preserving row order.
    pub fn classify_all(&self, data: &LabeledDataset<F>) -> Result<PosteriorTable<F>> {
        let mut posteriors = Vec::with_capacity(data.len());
        let mut predicted = Vec::with_capacity(data.len());
        for record in data.records() {
            let scores = self.log_scores(record)?;
            predicted.push(argmax_first(&scores));
            posteriors.push(normalize_log_scores(&scores));
        }
        Ok(PosteriorTable { class_labels: self.labels.clone(), posteriors, predicted })
    }

    /// Serialize to the versioned JSON model document.
    pub fn to_json(&self) -> Result<String>
    where
        F: Serialize,
    {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self>
    where
        F: for<'de> Deserialize<'de>,
    {
        let model: Self = serde_json::from_str(text)?;
        if model.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Schema(format!(
                "unsupported model format version {}",
                model.format_version
            )));
        }
        Ok(model)
    }
}

fn argmax_first<F: Scalar>(scores: &[F]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

fn normalize_log_scores<F: Scalar>(scores: &[F]) -> Vec<F> {
    let max = scores.iter().cloned().fold(F::neg_infinity(), F::max);
    let lse = max
        + scores
            .iter()
            .map(|&s| (s - max).exp())
            .fold(F::zero(), |a, b| a + b)
            .ln();
    scores.iter().map(|&s| (s - lse).exp()).collect()
}

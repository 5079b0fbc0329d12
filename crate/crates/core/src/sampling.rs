//! Evidence selection over a classified population.
//!
//! Three strategies operate on a class's posterior distribution:
//!
//! * user-based — the members whose rank falls inside a percentile window
//!   symmetric around the class median;
//! * item-based — the members whose posterior clears a threshold, extended
//!   to pairs and k-sets whose joint posterior score clears further
//!   thresholds (level-wise search with Apriori pruning);
//! * hybrid — item-based filtering applied inside the user-based window.
//!
//! Joint posterior scores may exceed 1 (their upper bound is
//! `1 / prior^(k-1)`); they are scores, not probabilities.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::classifier::PosteriorTable;
use crate::dataset::{ClassLabel, LabeledDataset};
use crate::error::{Error, Result};
use crate::metrics;
use crate::Scalar;

/// Per-level candidate cap for the group search.
pub const GROUP_SEARCH_CANDIDATE_CAP: usize = 1_000_000;

/// Default maximum group size for the level-wise search.
pub const DEFAULT_MAX_GROUP_SIZE: usize = 3;

/// Serialized evidence report format version.
pub const EVIDENCE_FORMAT_VERSION: u32 = 1;

/// One class's members ordered by posterior score.
///
/// Members are sorted ascending by `Pr(class | record)`, ties broken by
/// record index, so every member has a unique 1-based rank. The
/// `normalized_cdf` accumulates scores divided by the total class score
/// mass. `class_prior` is the class's share of the classified population;
/// it is the `Pr(Ci)` denominator of the joint posterior scores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassPosteriorDistribution<F> {
    class: ClassLabel,
    member_indices: Vec<usize>,
    scores: Vec<F>,
    normalized_cdf: Vec<F>,
    class_prior: F,
    #[serde(skip)]
    rank_by_index: HashMap<usize, usize>,
}

impl<F: Scalar> ClassPosteriorDistribution<F> {
    /// Build from explicit (record index, score) pairs.
    pub fn from_scores(
        class: ClassLabel,
        members: Vec<(usize, F)>,
        class_prior: F,
    ) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyClass(class.as_str().to_string()));
        }
        if !(class_prior > F::zero() && class_prior < F::one()) {
            return Err(Error::InvalidParameter(format!(
                "class prior must lie in (0, 1), got {class_prior}"
            )));
        }
        let mut seen = HashSet::new();
        for (idx, score) in &members {
            if !seen.insert(*idx) {
                return Err(Error::InvalidParameter(format!("duplicate member index {idx}")));
            }
            if !(*score >= F::zero() && *score <= F::one()) {
                return Err(Error::InvalidParameter(format!(
                    "posterior score {score} outside [0, 1]"
                )));
            }
        }
        let mut members = members;
        members.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
        let total: F = members.iter().map(|(_, s)| *s).fold(F::zero(), |a, b| a + b);
        if !(total > F::zero()) {
            return Err(Error::EmptyInput(format!(
                "class {:?} has zero total posterior mass",
                class.as_str()
            )));
        }
        let mut cdf = Vec::with_capacity(members.len());
        let mut acc = F::zero();
        for (_, s) in &members {
            acc += *s;
            cdf.push(acc / total);
        }
        let rank_by_index = members
            .iter()
            .enumerate()
            .map(|(pos, (idx, _))| (*idx, pos + 1))
            .collect();
        let (member_indices, scores) = members.into_iter().unzip();
        Ok(Self {
            class,
            member_indices,
            scores,
            normalized_cdf: cdf,
            class_prior,
            rank_by_index,
        })
    }

    pub fn class(&self) -> &ClassLabel {
        &self.class
    }

    /// Record indices, ascending by score (ties by index).
    pub fn member_indices(&self) -> &[usize] {
        &self.member_indices
    }

    /// Scores aligned with `member_indices`, ascending.
    pub fn scores(&self) -> &[F] {
        &self.scores
    }

    pub fn normalized_cdf(&self) -> &[F] {
        &self.normalized_cdf
    }

    pub fn class_prior(&self) -> F {
        self.class_prior
    }

    /// Class size `N(Ci)`.
    pub fn len(&self) -> usize {
        self.member_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.member_indices.is_empty()
    }

    /// 1-based ascending rank of a record within the class.
    pub fn rank_of(&self, record_index: usize) -> Option<usize> {
        self.rank_by_index.get(&record_index).copied()
    }
}

/// Sort members of `class` ascending by their posterior for that class and
/// accumulate the normalized score CDF.
pub fn build_distribution<F: Scalar>(
    table: &PosteriorTable<F>,
    data: &LabeledDataset<F>,
    class: &ClassLabel,
) -> Result<ClassPosteriorDistribution<F>> {
    if table.len() != data.len() {
        return Err(Error::Schema(format!(
            "posterior table covers {} records, dataset has {}",
            table.len(),
            data.len()
        )));
    }
    let column = table.class_column(class)?;
    let members = data.class_members(class)?;
    if members.is_empty() {
        return Err(Error::EmptyClass(class.as_str().to_string()));
    }
    let prior = F::from_count(members.len()) / F::from_count(data.len());
    let pairs = members.into_iter().map(|i| (i, column[i])).collect();
    ClassPosteriorDistribution::from_scores(class.clone(), pairs, prior)
}

/// A percentile window `(lower, upper]`, both in percent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PercentileBounds<F> {
    lower: F,
    upper: F,
}

impl<F: Scalar> PercentileBounds<F> {
    pub fn new(lower: F, upper: F) -> Result<Self> {
        let hundred = F::from_f64_lossy(100.0);
        if !(lower >= F::zero() && lower < hundred) {
            return Err(Error::InvalidParameter(format!(
                "lower percentile must lie in [0, 100), got {lower}"
            )));
        }
        if !(upper > F::zero() && upper <= hundred) {
            return Err(Error::InvalidParameter(format!(
                "upper percentile must lie in (0, 100], got {upper}"
            )));
        }
        if !(lower < upper) {
            return Err(Error::InvalidParameter(format!(
                "lower percentile {lower} must be below upper {upper}"
            )));
        }
        Ok(Self { lower, upper })
    }

    /// Symmetric window around the median covering `confidence` percent.
    pub fn from_confidence(confidence: F) -> Result<Self> {
        let hundred = F::from_f64_lossy(100.0);
        if !(confidence > F::zero() && confidence <= hundred) {
            return Err(Error::InvalidParameter(format!(
                "confidence must lie in (0, 100], got {confidence}"
            )));
        }
        let half = confidence / F::from_f64_lossy(2.0);
        let fifty = F::from_f64_lossy(50.0);
        Self::new(fifty - half, fifty + half)
    }

    pub fn lower(&self) -> F {
        self.lower
    }

    pub fn upper(&self) -> F {
        self.upper
    }

    pub fn confidence(&self) -> F {
        self.upper - self.lower
    }
}

/// Item-based thresholds: `sigma1` on single posteriors, `sigma2` on pair
/// scores, `sigma3` on k-wise scores for k >= 3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds<F> {
    pub sigma1: F,
    pub sigma2: F,
    pub sigma3: F,
}

impl<F: Scalar> Thresholds<F> {
    pub fn new(sigma1: F, sigma2: F, sigma3: F) -> Result<Self> {
        if !(sigma1 > F::zero() && sigma1 <= F::one()) {
            return Err(Error::InvalidParameter(format!(
                "sigma1 must lie in (0, 1], got {sigma1}"
            )));
        }
        if !(sigma2 > F::zero()) {
            return Err(Error::InvalidParameter(format!("sigma2 must be > 0, got {sigma2}")));
        }
        if !(sigma3 > F::zero()) {
            return Err(Error::InvalidParameter(format!("sigma3 must be > 0, got {sigma3}")));
        }
        Ok(Self { sigma1, sigma2, sigma3 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingStrategy {
    User,
    Item,
    ItemPair,
    ItemKwise,
    Hybrid,
}

/// Parameters an evidence set was drawn with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SamplingParams<F> {
    User {
        lower: F,
        upper: F,
    },
    Item {
        sigma1: F,
    },
    /// One surviving group from the level-wise search. `joint_score` is
    /// the group's joint posterior score; it may exceed 1.
    Group {
        level: usize,
        threshold: F,
        joint_score: F,
    },
    Hybrid {
        lower: F,
        upper: F,
        sigma1: F,
    },
}

/// Drawn audit evidence: record indices within one class, the parameters
/// used, and the representativeness index of the draw (absent when the
/// draw is empty or when the RI is undefined).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceSet<F> {
    pub strategy: SamplingStrategy,
    pub class: ClassLabel,
    pub params: SamplingParams<F>,
    /// Ascending record indices; always a subset of the class members.
    pub indices: Vec<usize>,
    /// Posterior scores aligned with `indices`.
    pub scores: Vec<F>,
    /// Representativeness index; `None` for an empty draw.
    pub ri: Option<F>,
}

impl<F: Scalar> EvidenceSet<F> {
    fn from_members(
        strategy: SamplingStrategy,
        params: SamplingParams<F>,
        dist: &ClassPosteriorDistribution<F>,
        mut members: Vec<(usize, F)>,
    ) -> Result<Self> {
        members.sort_by_key(|m| m.0);
        for w in members.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidParameter(format!(
                    "duplicate evidence index {}",
                    w[0].0
                )));
            }
        }
        for (idx, _) in &members {
            if dist.rank_of(*idx).is_none() {
                return Err(Error::InvalidParameter(format!(
                    "evidence index {idx} is not a member of class {:?}",
                    dist.class().as_str()
                )));
            }
        }
        let indices: Vec<usize> = members.iter().map(|(i, _)| *i).collect();
        let scores: Vec<F> = members.iter().map(|(_, s)| *s).collect();
        let ri = if indices.is_empty() {
            None
        } else {
            Some(metrics::ri_for_indices(dist, &indices)?)
        };
        Ok(Self { strategy, class: dist.class().clone(), params, indices, scores, ri })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    /// Empty evidence is a valid result carrying a warning, not an error.
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// JSON-ready report with record ids resolved from the population.
    pub fn to_report(&self, data: &LabeledDataset<F>) -> Result<EvidenceReport<F>> {
        let members = self
            .indices
            .iter()
            .zip(&self.scores)
            .map(|(&i, &s)| {
                data.records()
                    .get(i)
                    .map(|r| EvidenceMember { index: i, id: r.id.clone(), score: s })
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!("evidence index {i} out of range"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EvidenceReport {
            schema_version: EVIDENCE_FORMAT_VERSION,
            strategy: self.strategy,
            class: self.class.clone(),
            params: self.params.clone(),
            ri: self.ri,
            empty: self.indices.is_empty(),
            members,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceMember<F> {
    pub index: usize,
    pub id: String,
    pub score: F,
}

/// Serialized form of an evidence set: strategy, class, parameters,
/// record ids, RI and per-member posterior scores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceReport<F> {
    pub schema_version: u32,
    pub strategy: SamplingStrategy,
    pub class: ClassLabel,
    pub params: SamplingParams<F>,
    pub ri: Option<F>,
    /// Warning flag: the thresholds/bounds selected no members.
    pub empty: bool,
    pub members: Vec<EvidenceMember<F>>,
}

/// Draw the members whose rank midpoint falls inside the percentile
/// window: `lower/100 < (r - 0.5)/N(Ci) <= upper/100`.
///
/// Each member occupies probability mass `1/N(Ci)` centered at
/// `(r - 0.5)/N(Ci)`, so symmetric bounds select a window symmetric
/// around the median rank. A window selecting no members yields an empty
/// evidence set flagged in the report, not an error.
pub fn user_based_sample<F: Scalar>(
    dist: &ClassPosteriorDistribution<F>,
    bounds: PercentileBounds<F>,
) -> Result<EvidenceSet<F>> {
    let members = user_window_members(dist, bounds);
    EvidenceSet::from_members(
        SamplingStrategy::User,
        SamplingParams::User { lower: bounds.lower(), upper: bounds.upper() },
        dist,
        members,
    )
}

fn user_window_members<F: Scalar>(
    dist: &ClassPosteriorDistribution<F>,
    bounds: PercentileBounds<F>,
) -> Vec<(usize, F)> {
    let n = F::from_count(dist.len());
    let hundred = F::from_f64_lossy(100.0);
    let half = F::from_f64_lossy(0.5);
    let lo = bounds.lower() / hundred;
    let hi = bounds.upper() / hundred;
    let mut out = Vec::new();
    for (pos, (&idx, &score)) in dist.member_indices().iter().zip(dist.scores()).enumerate() {
        let midpoint = (F::from_count(pos + 1) - half) / n;
        if midpoint > lo && midpoint <= hi {
            out.push((idx, score));
        }
    }
    out
}

/// Draw the members with `Pr(class | record) >= sigma1`, `0 < sigma1 <= 1`.
pub fn item_based_sample<F: Scalar>(
    dist: &ClassPosteriorDistribution<F>,
    sigma1: F,
) -> Result<EvidenceSet<F>> {
    validate_sigma1(sigma1)?;
    let members: Vec<(usize, F)> = dist
        .member_indices()
        .iter()
        .zip(dist.scores())
        .filter(|(_, &s)| s >= sigma1)
        .map(|(&i, &s)| (i, s))
        .collect();
    EvidenceSet::from_members(
        SamplingStrategy::Item,
        SamplingParams::Item { sigma1 },
        dist,
        members,
    )
}

fn validate_sigma1<F: Scalar>(sigma1: F) -> Result<()> {
    if !(sigma1 > F::zero() && sigma1 <= F::one()) {
        return Err(Error::InvalidParameter(format!(
            "sigma1 must lie in (0, 1], got {sigma1}"
        )));
    }
    Ok(())
}

fn validate_prior<F: Scalar>(prior: F) -> Result<()> {
    if !(prior > F::zero() && prior < F::one()) {
        return Err(Error::InvalidParameter(format!(
            "class prior must lie in (0, 1), got {prior}"
        )));
    }
    Ok(())
}

/// Joint posterior score of two members: `pA * pB / prior`.
///
/// The score is bounded above by `1 / prior` and may exceed 1; it is a
/// score to compare against `sigma2`, not a probability.
pub fn joint_posterior_pair<F: Scalar>(pa: F, pb: F, prior: F) -> Result<F> {
    joint_posterior_kwise(&[pa, pb], prior)
}

/// Joint posterior score of `k >= 2` members: `prod(scores) / prior^(k-1)`,
/// bounded above by `1 / prior^(k-1)`.
pub fn joint_posterior_kwise<F: Scalar>(scores: &[F], prior: F) -> Result<F> {
    if scores.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "joint posterior needs k >= 2 scores, got {}",
            scores.len()
        )));
    }
    validate_prior(prior)?;
    for &s in scores {
        if !(s >= F::zero() && s <= F::one()) {
            return Err(Error::InvalidParameter(format!(
                "posterior score {s} outside [0, 1]"
            )));
        }
    }
    let numerator = scores.iter().fold(F::one(), |acc, &s| acc * s);
    let denominator = (1..scores.len()).fold(F::one(), |acc, _| acc * prior);
    Ok(numerator / denominator)
}

/// Level-wise search for groups of simultaneously risky members.
///
/// Level 1 keeps the members passing `sigma1`; level 2 keeps pairs of
/// level-1 members whose pair score passes `sigma2`; level `k >= 3` keeps
/// k-sets whose every (k-1)-subset survived the previous level and whose
/// k-wise score passes `sigma3`. Candidate generation joins surviving
/// (k-1)-sets sharing a (k-2)-prefix, capped at
/// [`GROUP_SEARCH_CANDIDATE_CAP`] candidates per level.
///
/// Returns one [`EvidenceSet`] per surviving group, levels in order,
/// groups in ascending index order. An empty level ends the search.
pub fn item_based_group_search<F: Scalar>(
    dist: &ClassPosteriorDistribution<F>,
    thresholds: Thresholds<F>,
    max_k: usize,
) -> Result<Vec<EvidenceSet<F>>> {
    if max_k < 2 {
        return Err(Error::InvalidParameter(format!("max_k must be >= 2, got {max_k}")));
    }
    Thresholds::new(thresholds.sigma1, thresholds.sigma2, thresholds.sigma3)?;
    let prior = dist.class_prior();
    validate_prior(prior)?;

    // Positions into the distribution's rank order, not record indices.
    let level1: Vec<usize> = (0..dist.len())
        .filter(|&p| dist.scores()[p] >= thresholds.sigma1)
        .collect();

    let mut out = Vec::new();
    for &p in &level1 {
        out.push(EvidenceSet::from_members(
            SamplingStrategy::Item,
            SamplingParams::Group {
                level: 1,
                threshold: thresholds.sigma1,
                joint_score: dist.scores()[p],
            },
            dist,
            vec![(dist.member_indices()[p], dist.scores()[p])],
        )?);
    }
    if level1.is_empty() {
        return Ok(out);
    }

    let mut previous: Vec<Vec<usize>> = level1.iter().map(|&p| vec![p]).collect();
    for level in 2..=max_k {
        let threshold = if level == 2 { thresholds.sigma2 } else { thresholds.sigma3 };
        let candidates = join_candidates(&previous, level, dist.len())?;
        let mut survivors = Vec::new();
        for group in candidates {
            let scores: Vec<F> = group.iter().map(|&p| dist.scores()[p]).collect();
            let joint = joint_posterior_kwise(&scores, prior)?;
            if joint >= threshold {
                let members: Vec<(usize, F)> = group
                    .iter()
                    .map(|&p| (dist.member_indices()[p], dist.scores()[p]))
                    .collect();
                out.push(EvidenceSet::from_members(
                    if level == 2 { SamplingStrategy::ItemPair } else { SamplingStrategy::ItemKwise },
                    SamplingParams::Group { level, threshold, joint_score: joint },
                    dist,
                    members,
                )?);
                survivors.push(group);
            }
        }
        if survivors.is_empty() {
            break;
        }
        previous = survivors;
    }
    Ok(out)
}

/// Apriori join: merge sorted (k-1)-sets sharing their first k-2 elements,
/// then keep only candidates whose every (k-1)-subset survived.
fn join_candidates(previous: &[Vec<usize>], level: usize, _universe: usize) -> Result<Vec<Vec<usize>>> {
    let prev_set: HashSet<&[usize]> = previous.iter().map(|g| g.as_slice()).collect();
    let mut candidates = Vec::new();
    for (i, a) in previous.iter().enumerate() {
        for b in &previous[i + 1..] {
            if a[..level - 2] != b[..level - 2] {
                // Sorted lexicographically by construction: once prefixes
                // diverge no later b rejoins this a.
                break;
            }
            let mut cand = a.clone();
            cand.push(b[level - 2]);
            // a < b lexicographically with equal prefixes, so cand stays sorted.
            let all_subsets_survive = (0..cand.len()).all(|skip| {
                let subset: Vec<usize> = cand
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                prev_set.contains(subset.as_slice())
            });
            if all_subsets_survive {
                candidates.push(cand);
                if candidates.len() > GROUP_SEARCH_CANDIDATE_CAP {
                    return Err(Error::CandidateOverflow {
                        level,
                        count: candidates.len(),
                        cap: GROUP_SEARCH_CANDIDATE_CAP,
                    });
                }
            }
        }
    }
    candidates.sort();
    Ok(candidates)
}

/// User-based window first, then the item threshold inside it. The result
/// is always a subset of the plain user-based draw.
pub fn hybrid_sample<F: Scalar>(
    dist: &ClassPosteriorDistribution<F>,
    bounds: PercentileBounds<F>,
    thresholds: Thresholds<F>,
) -> Result<EvidenceSet<F>> {
    Thresholds::new(thresholds.sigma1, thresholds.sigma2, thresholds.sigma3)?;
    let members: Vec<(usize, F)> = user_window_members(dist, bounds)
        .into_iter()
        .filter(|(_, s)| *s >= thresholds.sigma1)
        .collect();
    EvidenceSet::from_members(
        SamplingStrategy::Hybrid,
        SamplingParams::Hybrid {
            lower: bounds.lower(),
            upper: bounds.upper(),
            sigma1: thresholds.sigma1,
        },
        dist,
        members,
    )
}

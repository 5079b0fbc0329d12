//! Naive Bayes classification and evidence sampling for audit populations.
//!
//! The crate covers the full pipeline an auditor needs to draw evidence from
//! a classified population:
//!
//! * [`dataset`] — labeled populations loaded from CSV/JSON-lines, with
//!   seeded, reproducible train/test splits.
//! * [`classifier`] — a Naive Bayes model (Gaussian likelihoods for
//!   continuous attributes, multinomial for counts) producing per-record
//!   posterior probabilities.
//! * [`sampling`] — user-based (percentile window), item-based (posterior
//!   threshold, including joint-posterior group search) and hybrid evidence
//!   selection.
//! * [`metrics`] — representativeness index, confusion matrix, ROC/AUC,
//!   two-sample Kolmogorov–Smirnov statistic and variability summaries.
//! * [`text`] — keyword-count featurization of message corpora.
//! * [`graph`] — degree centrality and clustering coefficients over
//!   multigraphs, with risk-class binning.
//!
//! All floating-point math is generic over [`Scalar`] (`f32` or `f64`);
//! the `*64` aliases at the crate root are the types the CLI uses.

// Parameter guards use the negated form `!(x > 0)` on purpose: it also
// rejects NaN, which `x <= 0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub mod classifier;
pub mod dataset;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod rng;
pub mod sampling;
pub mod text;

pub use error::{Error, Result};

/// Floating-point scalar the numeric core is generic over.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Lossless widening for transcendental helpers and report output.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Conversion from `f64` literals; saturates rather than panics.
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).unwrap_or_else(Self::nan)
    }

    /// Conversion from usize counts (ranks, class sizes).
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).unwrap_or_else(Self::nan)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

pub type LabeledDataset64 = dataset::LabeledDataset<f64>;
pub type Record64 = dataset::Record<f64>;
pub type NaiveBayesModel64 = classifier::NaiveBayesModel<f64>;
pub type PosteriorTable64 = classifier::PosteriorTable<f64>;
pub type ClassPosteriorDistribution64 = sampling::ClassPosteriorDistribution<f64>;
pub type PercentileBounds64 = sampling::PercentileBounds<f64>;
pub type Thresholds64 = sampling::Thresholds<f64>;
pub type EvidenceSet64 = sampling::EvidenceSet<f64>;
pub type RocCurve64 = metrics::RocCurve<f64>;
pub type VariabilityReport64 = metrics::VariabilityReport<f64>;
pub type KsResult64 = metrics::KsResult<f64>;

pub type LabeledDataset32 = dataset::LabeledDataset<f32>;
pub type NaiveBayesModel32 = classifier::NaiveBayesModel<f32>;
pub type ClassPosteriorDistribution32 = sampling::ClassPosteriorDistribution<f32>;
pub type EvidenceSet32 = sampling::EvidenceSet<f32>;

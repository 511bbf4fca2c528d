//! Executable method families and result validation.

pub mod ahp;
mod apply;
pub mod fuzzy;
pub mod maut;
mod normalize;
pub mod promethee;
mod saw;
mod validate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{DataType, DecisionSituation, ModelError, PerformanceValue, ProblemKind};

pub use apply::{apply_method, Application, MethodConfig, MethodFamily};
pub use normalize::{minmax_normalize, Normalized};
pub use saw::{saw_rank, SawOptions};
pub use validate::{validate_result, ProcessStep, Verdict};

/// Scores closer than this (relative to their magnitude) share a tier.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MethodError {
    #[error("criterion {criterion} is qualitative; enable rank encoding to use it here")]
    QualitativeDataUnsupported { criterion: String },
    #[error("criterion {criterion} holds fuzzy values, which this method cannot use")]
    FuzzyDataUnsupported { criterion: String },
    #[error("pairwise matrix must be square and nonempty")]
    NotSquare,
    #[error("pairwise entry ({row}, {col}) must be positive and finite")]
    NotPositive { row: usize, col: usize },
    #[error("pairwise entries ({row}, {col}) and ({col}, {row}) are not reciprocal")]
    NotReciprocal { row: usize, col: usize },
    #[error("matrix dimension {n} exceeds the supported maximum {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("{n} alternatives exceed the maximum of {max} for pairwise comparison")]
    TooManyAlternatives { n: usize, max: usize },
    #[error("comparisons for {matrix} are inconsistent (CR = {cr:.4})")]
    InconsistentMatrix { matrix: String, cr: f64 },
    #[error("at least two alternatives are required")]
    TooFewAlternatives,
    #[error("sorting thresholds must be strictly descending and one fewer than the categories")]
    NonMonotoneThresholds,
    #[error("utility function for {criterion} has no breakpoints")]
    EmptyUtility { criterion: String },
    #[error("invalid utility function: {0}")]
    InvalidUtility(String),
    #[error("invalid preference function: {0}")]
    InvalidPreference(String),
    #[error("fuzzy multiplication needs nonnegative supports")]
    NegativeSupport,
    #[error("method {method} does not solve {problem:?} problems")]
    UnsupportedProblem {
        method: String,
        problem: ProblemKind,
    },
    #[error("missing method configuration: {0}")]
    MissingConfig(String),
    #[error("no executable method named {0}")]
    UnknownMethod(String),
    #[error("{0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Situation(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlternativeScore {
    pub alternative: String,
    pub score: f64,
}

/// Outcome of PROMETHEE I style pairwise comparison of flows.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PartialOrder {
    /// `(a, b)`: a outranks b.
    pub preferred: Vec<(String, String)>,
    pub indifferent: Vec<(String, String)>,
    pub incomparable: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    /// Scores in input order.
    pub scores: Vec<AlternativeScore>,
    /// Best tier first; alternatives with equal scores share a tier.
    pub tiers: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partial: Option<PartialOrder>,
    /// Fuzzy aggregate per alternative in input order; `scores` holds the
    /// centroids.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuzzy_scores: Option<Vec<fuzzy::Tfn>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Ranking {
    /// Total order by descending score, stable on input order.
    pub fn from_scores(alternatives: &[String], scores: &[f64]) -> Ranking {
        debug_assert_eq!(alternatives.len(), scores.len());
        let mut idx: Vec<usize> = (0..scores.len()).collect();
        idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
        let mut tiers: Vec<Vec<String>> = Vec::new();
        let mut tier_head = f64::NAN;
        for i in idx {
            let s = scores[i];
            let same = !tier_head.is_nan()
                && (tier_head - s).abs() <= TIE_TOLERANCE * tier_head.abs().max(1.0);
            match tiers.last_mut() {
                Some(tier) if same => tier.push(alternatives[i].clone()),
                _ => {
                    tiers.push(vec![alternatives[i].clone()]);
                    tier_head = s;
                }
            }
        }
        Ranking {
            scores: alternatives
                .iter()
                .zip(scores)
                .map(|(a, &s)| AlternativeScore {
                    alternative: a.clone(),
                    score: s,
                })
                .collect(),
            tiers,
            partial: None,
            fuzzy_scores: None,
            warnings: Vec::new(),
        }
    }

    /// All alternatives, best first.
    pub fn order(&self) -> Vec<&str> {
        self.tiers.iter().flatten().map(String::as_str).collect()
    }

    pub fn top(&self, k: usize) -> Vec<String> {
        self.tiers.iter().flatten().take(k).cloned().collect()
    }

    pub fn score_of(&self, alternative: &str) -> Option<f64> {
        self.scores
            .iter()
            .find(|s| s.alternative == alternative)
            .map(|s| s.score)
    }

    pub fn score_values(&self) -> Vec<f64> {
        self.scores.iter().map(|s| s.score).collect()
    }

    /// Position of the tier holding `alternative`, 0 = best.
    pub fn tier_of(&self, alternative: &str) -> Option<usize> {
        self.tiers
            .iter()
            .position(|t| t.iter().any(|a| a == alternative))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortAssignment {
    pub alternative: String,
    pub category: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecisionResult {
    ChoiceSubset { alternatives: Vec<String> },
    RankingResult { ranking: Ranking },
    SortingResult { assignments: Vec<SortAssignment> },
}

impl DecisionResult {
    pub fn problem(&self) -> ProblemKind {
        match self {
            DecisionResult::ChoiceSubset { .. } => ProblemKind::Choice,
            DecisionResult::RankingResult { .. } => ProblemKind::Ranking,
            DecisionResult::SortingResult { .. } => ProblemKind::Sorting,
        }
    }
}

/// Numeric view of one criterion column. Labels become their 0-based scale
/// rank when `encode_qualitative` is set.
pub(crate) fn numeric_column(
    situation: &DecisionSituation,
    k: usize,
    encode_qualitative: bool,
) -> Result<Vec<f64>, MethodError> {
    let criterion = &situation.criteria[k];
    if criterion.data_type == DataType::Qualitative && !encode_qualitative {
        return Err(MethodError::QualitativeDataUnsupported {
            criterion: criterion.name.clone(),
        });
    }
    situation
        .performance
        .iter()
        .map(|row| match &row[k] {
            PerformanceValue::Numeric(v) => Ok(*v),
            PerformanceValue::Label(label) => {
                criterion.rank_of(label).map(|r| r as f64).ok_or_else(|| {
                    MethodError::Situation(ModelError::IncompatibleCell {
                        alternative: String::new(),
                        criterion: criterion.name.clone(),
                        data_type: criterion.data_type,
                        reason: format!("label {label:?} is not on the scale"),
                    })
                })
            }
            PerformanceValue::FuzzyTriple(_) => Err(MethodError::FuzzyDataUnsupported {
                criterion: criterion.name.clone(),
            }),
        })
        .collect()
}

pub(crate) fn check_weights(
    situation: &DecisionSituation,
    weights: &[f64],
) -> Result<(), MethodError> {
    if weights.len() != situation.criteria.len() {
        return Err(MethodError::DimensionMismatch(format!(
            "{} weights for {} criteria",
            weights.len(),
            situation.criteria.len()
        )));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(MethodError::DimensionMismatch(
            "weights must be finite and nonnegative".into(),
        ));
    }
    Ok(())
}

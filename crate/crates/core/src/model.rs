//! Decision-situation model: the `<problem; alternatives; criteria>` triplet,
//! DM-point screening and the typology gate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::methods::ahp::{self, PairwiseMatrix, PriorityMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    Choice,
    Ranking,
    Sorting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataType {
    Quantitative,
    Qualitative,
    Fuzzy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlternativesNature {
    Discrete,
    Continuous,
}

/// How criterion weights reach the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightingOrigin {
    /// Weights given as values on each criterion.
    Direct,
    /// Weights derived from a pairwise comparison matrix over the criteria.
    Pairwise,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub name: String,
    pub direction: Direction,
    pub data_type: DataType,
    /// Ordered labels, lowest first. Present iff the criterion is qualitative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<Vec<String>>,
    pub weight: f64,
}

impl Criterion {
    pub fn quantitative(name: impl Into<String>, direction: Direction, weight: f64) -> Self {
        Self {
            name: name.into(),
            direction,
            data_type: DataType::Quantitative,
            scale: None,
            weight,
        }
    }

    pub fn qualitative<S: Into<String>>(
        name: impl Into<String>,
        direction: Direction,
        scale: impl IntoIterator<Item = S>,
        weight: f64,
    ) -> Self {
        Self {
            name: name.into(),
            direction,
            data_type: DataType::Qualitative,
            scale: Some(scale.into_iter().map(Into::into).collect()),
            weight,
        }
    }

    pub fn fuzzy(name: impl Into<String>, direction: Direction, weight: f64) -> Self {
        Self {
            name: name.into(),
            direction,
            data_type: DataType::Fuzzy,
            scale: None,
            weight,
        }
    }

    /// 0-based position of `label` in the scale.
    pub fn rank_of(&self, label: &str) -> Option<usize> {
        self.scale.as_ref()?.iter().position(|l| l == label)
    }
}

/// One performance-table cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerformanceValue {
    Numeric(f64),
    Label(String),
    /// `[l, m, u]` with `l <= m <= u`.
    FuzzyTriple([f64; 3]),
}

impl PerformanceValue {
    pub fn fuzzy(l: f64, m: f64, u: f64) -> Self {
        PerformanceValue::FuzzyTriple([l, m, u])
    }

    fn compatible_with(&self, data_type: DataType) -> bool {
        matches!(
            (self, data_type),
            (PerformanceValue::Numeric(_), DataType::Quantitative)
                | (PerformanceValue::Label(_), DataType::Qualitative)
                | (PerformanceValue::FuzzyTriple(_), DataType::Fuzzy)
                // crisp numbers are admitted in fuzzy columns and lifted to l = m = u
                | (PerformanceValue::Numeric(_), DataType::Fuzzy)
        )
    }
}

impl From<f64> for PerformanceValue {
    fn from(v: f64) -> Self {
        PerformanceValue::Numeric(v)
    }
}

impl From<&str> for PerformanceValue {
    fn from(v: &str) -> Self {
        PerformanceValue::Label(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionSituation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    pub problem: ProblemKind,
    pub alternatives: Vec<String>,
    pub alternatives_nature: AlternativesNature,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incompatibility_present: Option<bool>,
    #[serde(default = "one")]
    pub decision_maker_count: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sorting_categories: Option<Vec<String>>,
    /// Declared origin of the weights; undeclared leaves the weighting
    /// requirement unexpressed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weighting: Option<WeightingOrigin>,
    /// Row-major pairwise comparisons over the criteria, used when
    /// `weighting = "pairwise"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criteria_comparisons: Option<Vec<Vec<f64>>>,
    pub performance: Vec<Vec<PerformanceValue>>,
    pub criteria: Vec<Criterion>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("a decision needs at least two alternatives, found {found}")]
    TooFewAlternatives { found: usize },
    #[error("performance table is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("cell ({alternative}, {criterion}) does not fit a {data_type:?} criterion: {reason}")]
    IncompatibleCell {
        alternative: String,
        criterion: String,
        data_type: DataType,
        reason: String,
    },
    #[error("all criterion weights are zero")]
    AllZeroWeights,
    #[error("criterion {criterion} has invalid weight {weight}")]
    InvalidWeight { criterion: String, weight: f64 },
    #[error("sorting problems need a list of sorting categories")]
    MissingSortingCategories,
    #[error("criterion {criterion}: {reason}")]
    InvalidScale { criterion: String, reason: String },
    #[error("no criteria defined")]
    NoCriteria,
    #[error("decision maker count must be positive")]
    NoDecisionMakers,
    #[error("invalid criteria comparisons: {0}")]
    InvalidComparisons(String),
    #[error("criteria and decision-maker counts must be positive")]
    ZeroCount,
}

impl DecisionSituation {
    pub fn criterion_index(&self, name: &str) -> Option<usize> {
        self.criteria.iter().position(|c| c.name == name)
    }

    pub fn weights(&self) -> Vec<f64> {
        self.criteria.iter().map(|c| c.weight).collect()
    }

    /// Checks every situation invariant and returns a copy whose weights sum
    /// to one. Validating an already validated situation is the identity.
    pub fn validate(&self) -> Result<DecisionSituation, ModelError> {
        if self.alternatives.len() < 2 {
            return Err(ModelError::TooFewAlternatives {
                found: self.alternatives.len(),
            });
        }
        if self.criteria.is_empty() {
            return Err(ModelError::NoCriteria);
        }
        if self.decision_maker_count == 0 {
            return Err(ModelError::NoDecisionMakers);
        }
        let (n_alt, n_crit) = (self.alternatives.len(), self.criteria.len());
        let ragged = self.performance.iter().any(|row| row.len() != n_crit);
        if self.performance.len() != n_alt || ragged {
            return Err(ModelError::DimensionMismatch {
                rows: self.performance.len(),
                cols: self
                    .performance
                    .iter()
                    .find(|row| row.len() != n_crit)
                    .or(self.performance.first())
                    .map_or(0, Vec::len),
                expected_rows: n_alt,
                expected_cols: n_crit,
            });
        }
        if self.problem == ProblemKind::Sorting
            && self.sorting_categories.as_ref().is_none_or(|c| c.len() < 2)
        {
            return Err(ModelError::MissingSortingCategories);
        }
        for criterion in &self.criteria {
            check_scale(criterion)?;
        }
        for (alt, row) in self.alternatives.iter().zip(&self.performance) {
            for (criterion, cell) in self.criteria.iter().zip(row) {
                check_cell(alt, criterion, cell)?;
            }
        }

        let mut validated = self.clone();
        if self.weighting == Some(WeightingOrigin::Pairwise) {
            let rows = self.criteria_comparisons.as_ref().ok_or_else(|| {
                ModelError::InvalidComparisons(
                    "pairwise weighting declared without a matrix".into(),
                )
            })?;
            let matrix = PairwiseMatrix::new(rows.clone())
                .map_err(|e| ModelError::InvalidComparisons(e.to_string()))?;
            if matrix.dim() != n_crit {
                return Err(ModelError::InvalidComparisons(format!(
                    "matrix is {0}x{0} for {1} criteria",
                    matrix.dim(),
                    n_crit
                )));
            }
            let priorities = ahp::priorities(&matrix, PriorityMode::GeometricMean);
            for (c, w) in validated.criteria.iter_mut().zip(priorities.weights) {
                c.weight = w;
            }
        }
        let weights = validated.weights();
        for (c, &w) in validated.criteria.iter().zip(&weights) {
            if !w.is_finite() || w < 0.0 {
                return Err(ModelError::InvalidWeight {
                    criterion: c.name.clone(),
                    weight: w,
                });
            }
        }
        let normalized = normalize_weights(&weights)?;
        for (c, w) in validated.criteria.iter_mut().zip(normalized) {
            c.weight = w;
        }
        Ok(validated)
    }
}

/// Scales weights to sum to one. Weights already summing to one within
/// rounding are returned untouched.
pub fn normalize_weights(weights: &[f64]) -> Result<Vec<f64>, ModelError> {
    let sum: f64 = weights.iter().sum();
    if sum <= 0.0 {
        return Err(ModelError::AllZeroWeights);
    }
    let slack = 4.0 * f64::EPSILON * weights.len() as f64;
    if (sum - 1.0).abs() <= slack {
        return Ok(weights.to_vec());
    }
    Ok(weights.iter().map(|w| w / sum).collect())
}

fn check_scale(criterion: &Criterion) -> Result<(), ModelError> {
    let invalid = |reason: &str| ModelError::InvalidScale {
        criterion: criterion.name.clone(),
        reason: reason.to_string(),
    };
    match (criterion.data_type, &criterion.scale) {
        (DataType::Qualitative, None) => Err(invalid("qualitative criteria need a scale")),
        (DataType::Qualitative, Some(scale)) => {
            let mut seen = std::collections::HashSet::new();
            if scale.iter().any(|l| !seen.insert(l.as_str())) {
                return Err(invalid("scale labels must be distinct"));
            }
            if scale.len() < 2 {
                return Err(invalid("a scale needs at least two labels"));
            }
            Ok(())
        }
        (_, Some(_)) => Err(invalid("only qualitative criteria carry a scale")),
        (_, None) => Ok(()),
    }
}

fn check_cell(alt: &str, criterion: &Criterion, cell: &PerformanceValue) -> Result<(), ModelError> {
    let reject = |reason: String| ModelError::IncompatibleCell {
        alternative: alt.to_string(),
        criterion: criterion.name.clone(),
        data_type: criterion.data_type,
        reason,
    };
    if !cell.compatible_with(criterion.data_type) {
        return Err(reject(format!("value {cell:?} has the wrong kind")));
    }
    match cell {
        PerformanceValue::Numeric(v) if !v.is_finite() => Err(reject("value is not finite".into())),
        PerformanceValue::Label(label) if criterion.rank_of(label).is_none() => {
            Err(reject(format!("label {label:?} is not on the scale")))
        }
        PerformanceValue::FuzzyTriple([l, m, u]) => {
            if ![l, m, u].iter().all(|v| v.is_finite()) || !(l <= m && m <= u) {
                Err(reject(format!("triple ({l}, {m}, {u}) is not ordered")))
            } else {
                Ok(())
            }
        }
        _ => Ok(()),
    }
}

pub fn validate_situation(situation: &DecisionSituation) -> Result<DecisionSituation, ModelError> {
    situation.validate()
}

// DM-point screening --------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GuidanceForm {
    Linear,
    Tree,
}

/// Answers to the three DM-point screening questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DmPointScreen {
    pub guidance_form: GuidanceForm,
    pub offers_arguments: bool,
    pub offers_prioritization: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenVerdict {
    pub is_dm_point: bool,
    pub needs_criteria_definition: bool,
}

/// A step is a DM point when its guidance branches; without arguments to
/// choose between branches the criteria have to be defined first.
pub fn screen_dm_point(screen: DmPointScreen) -> ScreenVerdict {
    let is_dm_point = screen.guidance_form == GuidanceForm::Tree;
    ScreenVerdict {
        is_dm_point,
        needs_criteria_definition: is_dm_point && !screen.offers_arguments,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriteriaAxis {
    Mono,
    Multi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionMakerAxis {
    Single,
    Multiple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypologyVerdict {
    pub criteria_axis: CriteriaAxis,
    pub dm_axis: DecisionMakerAxis,
    /// False only for the single-criterion, single-decision-maker case,
    /// which is an optimization task.
    pub mc_eligible: bool,
}

pub fn classify_typology(
    criteria_count: u32,
    dm_count: u32,
) -> Result<TypologyVerdict, ModelError> {
    if criteria_count == 0 || dm_count == 0 {
        return Err(ModelError::ZeroCount);
    }
    let criteria_axis = if criteria_count == 1 {
        CriteriaAxis::Mono
    } else {
        CriteriaAxis::Multi
    };
    let dm_axis = if dm_count == 1 {
        DecisionMakerAxis::Single
    } else {
        DecisionMakerAxis::Multiple
    };
    Ok(TypologyVerdict {
        criteria_axis,
        dm_axis,
        mc_eligible: !(criteria_axis == CriteriaAxis::Mono && dm_axis == DecisionMakerAxis::Single),
    })
}

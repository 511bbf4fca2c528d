//! Triangular fuzzy numbers and fuzzy simple additive weighting.

use std::ops::Add;

use serde::{Deserialize, Serialize};

use super::{MethodError, Ranking};
use crate::model::{DataType, DecisionSituation, Direction, PerformanceValue};

/// Triangular fuzzy number `(l, m, u)` with `l <= m <= u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", try_from = "[f64; 3]")]
pub struct Tfn {
    l: f64,
    m: f64,
    u: f64,
}

impl Tfn {
    pub fn new(l: f64, m: f64, u: f64) -> Result<Self, MethodError> {
        if [l, m, u].iter().all(|v| v.is_finite()) && l <= m && m <= u {
            Ok(Self { l, m, u })
        } else {
            Err(MethodError::DimensionMismatch(format!(
                "({l}, {m}, {u}) is not a triangular fuzzy number"
            )))
        }
    }

    pub fn crisp(v: f64) -> Self {
        Self { l: v, m: v, u: v }
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn is_crisp(&self) -> bool {
        self.l == self.m && self.m == self.u
    }

    /// `lambda * (l, m, u)` for `lambda >= 0`.
    pub fn scale(self, lambda: f64) -> Self {
        debug_assert!(lambda >= 0.0);
        Self {
            l: lambda * self.l,
            m: lambda * self.m,
            u: lambda * self.u,
        }
    }

    /// Component-wise product, defined for nonnegative supports.
    pub fn product(self, other: Tfn) -> Result<Self, MethodError> {
        if self.l < 0.0 || other.l < 0.0 {
            return Err(MethodError::NegativeSupport);
        }
        Ok(Self {
            l: self.l * other.l,
            m: self.m * other.m,
            u: self.u * other.u,
        })
    }

    /// Centre of gravity `(l + m + u) / 3`; a crisp number is its own
    /// centroid.
    pub fn centroid(&self) -> f64 {
        if self.is_crisp() {
            self.m
        } else {
            (self.l + self.m + self.u) / 3.0
        }
    }
}

impl Add for Tfn {
    type Output = Tfn;

    fn add(self, rhs: Tfn) -> Tfn {
        Tfn {
            l: self.l + rhs.l,
            m: self.m + rhs.m,
            u: self.u + rhs.u,
        }
    }
}

impl From<Tfn> for [f64; 3] {
    fn from(t: Tfn) -> Self {
        [t.l, t.m, t.u]
    }
}

impl TryFrom<[f64; 3]> for Tfn {
    type Error = MethodError;

    fn try_from([l, m, u]: [f64; 3]) -> Result<Self, Self::Error> {
        Tfn::new(l, m, u)
    }
}

/// Linguistic levels used to fuzzify qualitative labels, lowest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TfnScale(Vec<Tfn>);

impl Default for TfnScale {
    fn default() -> Self {
        let t = |l, m, u| Tfn { l, m, u };
        TfnScale(vec![
            t(0.0, 0.0, 0.25),
            t(0.0, 0.25, 0.5),
            t(0.25, 0.5, 0.75),
            t(0.5, 0.75, 1.0),
            t(0.75, 1.0, 1.0),
        ])
    }
}

impl TfnScale {
    pub fn new(levels: Vec<Tfn>) -> Result<Self, MethodError> {
        if levels.len() < 2 {
            return Err(MethodError::MissingConfig(
                "a fuzzy scale needs at least two levels".into(),
            ));
        }
        Ok(TfnScale(levels))
    }

    pub fn levels(&self) -> &[Tfn] {
        &self.0
    }

    /// Level for label `rank` of a `labels`-long scale; the ends of the
    /// label scale map to the ends of the fuzzy scale.
    pub fn level(&self, rank: usize, labels: usize) -> Tfn {
        let top = self.0.len() - 1;
        if labels <= 1 {
            return self.0[top / 2];
        }
        let idx = (rank as f64 * top as f64 / (labels - 1) as f64).round() as usize;
        self.0[idx.min(top)]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FuzzyWeights {
    Crisp(Vec<f64>),
    Fuzzy(Vec<Tfn>),
}

fn lift_column(
    situation: &DecisionSituation,
    k: usize,
    scale: &TfnScale,
) -> Result<Vec<Tfn>, MethodError> {
    let criterion = &situation.criteria[k];
    situation
        .performance
        .iter()
        .map(|row| match &row[k] {
            PerformanceValue::Numeric(v) => Ok(Tfn::crisp(*v)),
            PerformanceValue::FuzzyTriple([l, m, u]) => Tfn::new(*l, *m, *u),
            PerformanceValue::Label(label) => {
                let labels = criterion.scale.as_ref().map_or(0, Vec::len);
                let rank = criterion
                    .rank_of(label)
                    .filter(|_| criterion.data_type == DataType::Qualitative)
                    .ok_or_else(|| MethodError::QualitativeDataUnsupported {
                        criterion: criterion.name.clone(),
                    })?;
                Ok(scale.level(rank, labels))
            }
        })
        .collect()
}

/// Fuzzy min-max normalization over the column support; 1 is best.
fn normalize_column(column: &[Tfn], direction: Direction) -> (Vec<Tfn>, bool) {
    let min = column.iter().map(|t| t.l).fold(f64::INFINITY, f64::min);
    let max = column.iter().map(|t| t.u).fold(f64::NEG_INFINITY, f64::max);
    let range = max - min;
    if range <= 0.0 {
        return (vec![Tfn::crisp(0.5); column.len()], true);
    }
    let values = column
        .iter()
        .map(|t| match direction {
            Direction::Maximize => Tfn {
                l: (t.l - min) / range,
                m: (t.m - min) / range,
                u: (t.u - min) / range,
            },
            Direction::Minimize => Tfn {
                l: (max - t.u) / range,
                m: (max - t.m) / range,
                u: (max - t.l) / range,
            },
        })
        .collect();
    (values, false)
}

/// Weighted sum of normalized fuzzy evaluations, ranked by centroid.
pub fn fuzzy_saw_rank(
    situation: &DecisionSituation,
    weights: &FuzzyWeights,
    scale: &TfnScale,
) -> Result<Ranking, MethodError> {
    let n_crit = situation.criteria.len();
    let weight_count = match weights {
        FuzzyWeights::Crisp(w) => w.len(),
        FuzzyWeights::Fuzzy(w) => w.len(),
    };
    if weight_count != n_crit {
        return Err(MethodError::DimensionMismatch(format!(
            "{weight_count} weights for {n_crit} criteria"
        )));
    }
    if let FuzzyWeights::Crisp(w) = weights {
        if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(MethodError::NegativeSupport);
        }
    }

    let mut totals = vec![Tfn::crisp(0.0); situation.alternatives.len()];
    let mut warnings = Vec::new();
    for (k, criterion) in situation.criteria.iter().enumerate() {
        let (column, degenerate) =
            normalize_column(&lift_column(situation, k, scale)?, criterion.direction);
        if degenerate {
            warnings.push(format!(
                "criterion {} is constant; normalized to 0.5",
                criterion.name
            ));
        }
        for (total, v) in totals.iter_mut().zip(column) {
            let weighted = match weights {
                FuzzyWeights::Crisp(w) => v.scale(w[k]),
                FuzzyWeights::Fuzzy(w) => w[k].product(v)?,
            };
            *total = *total + weighted;
        }
    }
    let centroids: Vec<f64> = totals.iter().map(Tfn::centroid).collect();
    let mut ranking = Ranking::from_scores(&situation.alternatives, &centroids);
    ranking.fuzzy_scores = Some(totals);
    ranking.warnings = warnings;
    Ok(ranking)
}

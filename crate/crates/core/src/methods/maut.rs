//! Multi-attribute utility: piecewise-linear partial utilities aggregated
//! additively or multiplicatively.

use serde::{Deserialize, Serialize};

use super::{check_weights, numeric_column, MethodError, Ranking};
use crate::model::{DecisionSituation, Direction};

const UTILITY_FLOOR: f64 = 1e-12;

/// Piecewise-linear utility through `(x, u)` breakpoints.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UtilityFunction {
    breakpoints: Vec<(f64, f64)>,
}

impl UtilityFunction {
    /// Breakpoints need strictly increasing `x`, utilities in `[0, 1]` and
    /// end utilities of 0 and 1 (in either order).
    pub fn new(breakpoints: Vec<(f64, f64)>) -> Result<Self, MethodError> {
        let invalid = |why: &str| Err(MethodError::InvalidUtility(why.to_string()));
        if breakpoints.len() < 2 {
            return invalid("at least two breakpoints are needed");
        }
        if breakpoints
            .iter()
            .any(|(x, u)| !x.is_finite() || !(0.0..=1.0).contains(u))
        {
            return invalid("utilities must lie in [0, 1] at finite x");
        }
        if breakpoints.windows(2).any(|w| w[0].0 >= w[1].0) {
            return invalid("breakpoint x values must be strictly increasing");
        }
        let (first, last) = (breakpoints[0].1, breakpoints[breakpoints.len() - 1].1);
        if !((first == 0.0 && last == 1.0) || (first == 1.0 && last == 0.0)) {
            return invalid("end utilities must be 0 and 1");
        }
        Ok(Self { breakpoints })
    }

    /// Straight line across `[min, max]`, rising for maximized criteria.
    pub fn linear(min: f64, max: f64, direction: Direction) -> Result<Self, MethodError> {
        match direction {
            Direction::Maximize => Self::new(vec![(min, 0.0), (max, 1.0)]),
            Direction::Minimize => Self::new(vec![(min, 1.0), (max, 0.0)]),
        }
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    /// Utility at `x`, clamped to the end values outside the breakpoint
    /// span. The flag reports clamping.
    pub fn evaluate(&self, x: f64) -> (f64, bool) {
        let bp = &self.breakpoints;
        let (x0, u0) = bp[0];
        let (xn, un) = bp[bp.len() - 1];
        if x < x0 {
            return (u0, true);
        }
        if x > xn {
            return (un, true);
        }
        let seg = bp
            .windows(2)
            .find(|w| x <= w[1].0)
            .expect("x lies within the span");
        let ((xa, ua), (xb, ub)) = (seg[0], seg[1]);
        if x == xa {
            return (ua, false);
        }
        if x == xb {
            return (ub, false);
        }
        (ua + (x - xa) / (xb - xa) * (ub - ua), false)
    }
}

impl<'de> Deserialize<'de> for UtilityFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let breakpoints = Vec::<(f64, f64)>::deserialize(deserializer)?;
        if breakpoints.is_empty() {
            return Err(serde::de::Error::custom(
                "utility function has no breakpoints",
            ));
        }
        UtilityFunction::new(breakpoints).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    #[default]
    Additive,
    /// Weighted geometric aggregation `prod u_i ^ w_i`.
    Multiplicative,
}

pub fn aggregate(utilities: &[f64], weights: &[f64], form: Aggregation) -> f64 {
    match form {
        Aggregation::Additive => utilities
            .iter()
            .zip(weights)
            .fold(0.0, |acc, (u, w)| acc + w * u),
        Aggregation::Multiplicative => utilities
            .iter()
            .zip(weights)
            .fold(1.0, |acc, (u, w)| acc * u.max(UTILITY_FLOOR).powf(*w)),
    }
}

/// Ranks by global utility. Qualitative values are read as scale ranks.
pub fn maut_rank(
    situation: &DecisionSituation,
    utilities: &[UtilityFunction],
    weights: &[f64],
    form: Aggregation,
) -> Result<Ranking, MethodError> {
    check_weights(situation, weights)?;
    if utilities.len() != situation.criteria.len() {
        let missing = situation
            .criteria
            .get(utilities.len())
            .map_or_else(String::new, |c| c.name.clone());
        return Err(MethodError::EmptyUtility { criterion: missing });
    }
    let columns = (0..situation.criteria.len())
        .map(|k| numeric_column(situation, k, true))
        .collect::<Result<Vec<_>, _>>()?;
    let mut warnings = Vec::new();
    let scores: Vec<f64> = (0..situation.alternatives.len())
        .map(|a| {
            let partial: Vec<f64> = utilities
                .iter()
                .zip(&columns)
                .enumerate()
                .map(|(k, (f, col))| {
                    let (u, clamped) = f.evaluate(col[a]);
                    if clamped {
                        warnings.push(format!(
                            "{} on {} lies outside the utility span; clamped",
                            situation.alternatives[a], situation.criteria[k].name
                        ));
                    }
                    u
                })
                .collect();
            aggregate(&partial, weights, form)
        })
        .collect();
    let mut ranking = Ranking::from_scores(&situation.alternatives, &scores);
    ranking.warnings = warnings;
    Ok(ranking)
}

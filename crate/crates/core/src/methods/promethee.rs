//! PROMETHEE outranking flows, the PROMETHEE I partial preorder, the
//! PROMETHEE II complete ranking and flow-threshold sorting.

use serde::{Deserialize, Serialize};

use super::{
    check_weights, numeric_column, MethodError, PartialOrder, Ranking, SortAssignment,
    TIE_TOLERANCE,
};
use crate::model::{DecisionSituation, Direction};

/// Maps a direction-signed difference to a preference degree in `[0, 1]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum PreferenceFunction {
    /// Any positive difference is full preference.
    #[default]
    Usual,
    /// Preference grows linearly up to the threshold `p`.
    VShape { p: f64 },
    /// Indifference up to `q`, linear growth to full preference at `p`.
    Linear { q: f64, p: f64 },
}

impl PreferenceFunction {
    pub fn validate(&self) -> Result<(), MethodError> {
        match *self {
            PreferenceFunction::Usual => Ok(()),
            PreferenceFunction::VShape { p } if p.is_finite() && p > 0.0 => Ok(()),
            PreferenceFunction::Linear { q, p }
                if q.is_finite() && p.is_finite() && q >= 0.0 && q < p =>
            {
                Ok(())
            }
            other => Err(MethodError::InvalidPreference(format!("{other:?}"))),
        }
    }

    pub fn degree(&self, d: f64) -> f64 {
        match *self {
            PreferenceFunction::Usual => {
                if d > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            PreferenceFunction::VShape { p } => (d / p).clamp(0.0, 1.0),
            PreferenceFunction::Linear { q, p } => {
                if d <= q {
                    0.0
                } else if d >= p {
                    1.0
                } else {
                    (d - q) / (p - q)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flows {
    pub alternatives: Vec<String>,
    pub positive: Vec<f64>,
    pub negative: Vec<f64>,
    pub net: Vec<f64>,
}

/// Flows over a numeric table, one row per alternative.
pub fn flows_from_table(
    alternatives: &[String],
    table: &[Vec<f64>],
    directions: &[Direction],
    weights: &[f64],
    preferences: &[PreferenceFunction],
) -> Result<Flows, MethodError> {
    let n = alternatives.len();
    if n < 2 {
        return Err(MethodError::TooFewAlternatives);
    }
    let m = weights.len();
    if table.len() != n
        || table.iter().any(|r| r.len() != m)
        || directions.len() != m
        || preferences.len() != m
    {
        return Err(MethodError::DimensionMismatch(
            "table, directions, weights and preference functions disagree in size".into(),
        ));
    }
    for p in preferences {
        p.validate()?;
    }

    // pi[a * n + b]: aggregated preference of a over b
    let mut pi = vec![0.0; n * n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let mut sum = 0.0;
            for k in 0..m {
                let d = match directions[k] {
                    Direction::Maximize => table[a][k] - table[b][k],
                    Direction::Minimize => table[b][k] - table[a][k],
                };
                sum += weights[k] * preferences[k].degree(d);
            }
            pi[a * n + b] = sum;
        }
    }
    let denom = (n - 1) as f64;
    let positive: Vec<f64> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| b != a)
                .map(|b| pi[a * n + b])
                .sum::<f64>()
                / denom
        })
        .collect();
    let negative: Vec<f64> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| b != a)
                .map(|b| pi[b * n + a])
                .sum::<f64>()
                / denom
        })
        .collect();
    let net = positive.iter().zip(&negative).map(|(p, q)| p - q).collect();
    Ok(Flows {
        alternatives: alternatives.to_vec(),
        positive,
        negative,
        net,
    })
}

/// Flows over a situation. Qualitative criteria enter through their scale
/// rank; fuzzy columns are rejected.
pub fn promethee_flows(
    situation: &DecisionSituation,
    weights: &[f64],
    preferences: &[PreferenceFunction],
) -> Result<Flows, MethodError> {
    if situation.alternatives.len() < 2 {
        return Err(MethodError::TooFewAlternatives);
    }
    check_weights(situation, weights)?;
    let columns = (0..situation.criteria.len())
        .map(|k| numeric_column(situation, k, true))
        .collect::<Result<Vec<_>, _>>()?;
    let table: Vec<Vec<f64>> = (0..situation.alternatives.len())
        .map(|a| columns.iter().map(|c| c[a]).collect())
        .collect();
    let directions: Vec<Direction> = situation.criteria.iter().map(|c| c.direction).collect();
    flows_from_table(
        &situation.alternatives,
        &table,
        &directions,
        weights,
        preferences,
    )
}

/// Complete ranking by net flow.
pub fn promethee2_rank(flows: &Flows) -> Ranking {
    Ranking::from_scores(&flows.alternatives, &flows.net)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOLERANCE
}

/// Partial preorder: `a` outranks `b` when it is at least as good on both
/// flows and strictly better on one. Crossed flows make a pair incomparable.
/// Tiers are by net flow; the relation itself is in `partial`.
pub fn promethee1_partial(flows: &Flows) -> Ranking {
    let n = flows.alternatives.len();
    let mut order = PartialOrder::default();
    for a in 0..n {
        for b in a + 1..n {
            let (pa, pb) = (flows.positive[a], flows.positive[b]);
            let (na, nb) = (flows.negative[a], flows.negative[b]);
            let plus = if close(pa, pb) {
                0
            } else if pa > pb {
                1
            } else {
                -1
            };
            // lower negative flow is better
            let minus = if close(na, nb) {
                0
            } else if na < nb {
                1
            } else {
                -1
            };
            let pair =
                |x: usize, y: usize| (flows.alternatives[x].clone(), flows.alternatives[y].clone());
            match (plus, minus) {
                (0, 0) => order.indifferent.push(pair(a, b)),
                (p, m) if p >= 0 && m >= 0 => order.preferred.push(pair(a, b)),
                (p, m) if p <= 0 && m <= 0 => order.preferred.push(pair(b, a)),
                _ => order.incomparable.push(pair(a, b)),
            }
        }
    }
    let mut ranking = promethee2_rank(flows);
    ranking.partial = Some(order);
    ranking
}

/// Assigns each alternative to the first category whose lower net-flow cut
/// it reaches; the last category takes the rest.
pub fn flow_sort(
    flows: &Flows,
    thresholds: &[f64],
    categories: &[String],
) -> Result<Vec<SortAssignment>, MethodError> {
    if categories.is_empty()
        || thresholds.len() + 1 != categories.len()
        || thresholds.iter().any(|t| !t.is_finite())
        || thresholds.windows(2).any(|w| w[0] <= w[1])
    {
        return Err(MethodError::NonMonotoneThresholds);
    }
    Ok(flows
        .alternatives
        .iter()
        .zip(&flows.net)
        .map(|(alt, &phi)| {
            let k = thresholds
                .iter()
                .position(|&cut| phi >= cut)
                .unwrap_or(thresholds.len());
            SortAssignment {
                alternative: alt.clone(),
                category: categories[k].clone(),
            }
        })
        .collect())
}

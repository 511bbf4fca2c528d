//! Simple additive weighting over min-max normalized columns.

use serde::{Deserialize, Serialize};

use super::{check_weights, minmax_normalize, numeric_column, MethodError, Ranking};
use crate::model::DecisionSituation;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SawOptions {
    /// Admit qualitative criteria through their scale rank.
    pub encode_qualitative: bool,
}

pub fn saw_rank(
    situation: &DecisionSituation,
    weights: &[f64],
    options: SawOptions,
) -> Result<Ranking, MethodError> {
    check_weights(situation, weights)?;
    let mut scores = vec![0.0; situation.alternatives.len()];
    let mut warnings = Vec::new();
    for (k, criterion) in situation.criteria.iter().enumerate() {
        let column = numeric_column(situation, k, options.encode_qualitative)?;
        let normalized = minmax_normalize(&column, criterion.direction);
        if normalized.degenerate {
            warnings.push(format!(
                "criterion {} is constant; normalized to 0.5",
                criterion.name
            ));
        }
        for (score, v) in scores.iter_mut().zip(&normalized.values) {
            *score += weights[k] * v;
        }
    }
    let mut ranking = Ranking::from_scores(&situation.alternatives, &scores);
    ranking.warnings = warnings;
    Ok(ranking)
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::matching::{Attribute, SelectionReport};
use super::{MethodId, Registry, RegistryError};

/// Relative importance of requirement attributes. Missing entries weigh 0.
pub type AttributeWeights = BTreeMap<Attribute, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodScore {
    pub method: MethodId,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedChoice {
    pub chosen: MethodId,
    /// Scores of every registry method, in registry order.
    pub scores: Vec<MethodScore>,
    /// Set when several candidates reached the top score with different
    /// cell vectors and declaration order decided.
    pub tie_broken_by_order: bool,
}

/// Scores each method as the weighted sum of its 0/1 cells and picks the best
/// candidate.
///
/// Weighted attributes that the requirements leave unexpressed are scored
/// from the interface capability (tool availability, incompatibility and
/// measure-scale support). Candidates that share the top score and have
/// identical cells on every weighted attribute cannot be told apart, which is
/// reported as [`RegistryError::TieNotResolvable`].
pub fn select_by_weighting(
    report: &SelectionReport,
    registry: &Registry,
    weights: &AttributeWeights,
) -> Result<WeightedChoice, RegistryError> {
    if report.candidates.is_empty() {
        return Err(RegistryError::NoCandidates);
    }
    for (&attr, &w) in weights {
        if !w.is_finite() || w < 0.0 {
            return Err(RegistryError::InvalidWeight(attr));
        }
    }
    let scored: Vec<(Attribute, f64)> = weights
        .iter()
        .filter(|(_, &w)| w > 0.0)
        .map(|(&a, &w)| (a, w))
        .collect();

    let mut vectors: Vec<Vec<bool>> = Vec::with_capacity(report.methods.len());
    for (col, id) in report.methods.iter().enumerate() {
        let iface = registry
            .lookup(id.as_str())
            .ok_or_else(|| RegistryError::UnknownMethod(id.clone()))?;
        let mut cells = Vec::with_capacity(scored.len());
        for &(attr, _) in &scored {
            let cell = match report.row(attr) {
                Some(row) => row.cells[col],
                None => attr
                    .capability(iface)
                    .ok_or(RegistryError::UnscorableAttribute(attr))?,
            };
            cells.push(cell);
        }
        vectors.push(cells);
    }

    let scores: Vec<MethodScore> = report
        .methods
        .iter()
        .zip(&vectors)
        .map(|(id, cells)| MethodScore {
            method: id.clone(),
            score: scored
                .iter()
                .zip(cells)
                .filter(|(_, &c)| c)
                .fold(0.0, |acc, ((_, w), _)| acc + w),
        })
        .collect();

    let candidate_cols: Vec<usize> = (0..report.methods.len())
        .filter(|&c| report.is_candidate(&report.methods[c]))
        .collect();
    let best = candidate_cols
        .iter()
        .map(|&c| scores[c].score)
        .fold(f64::NEG_INFINITY, f64::max);
    let tolerance = 1e-12 * best.abs().max(1.0);
    let top: Vec<usize> = candidate_cols
        .into_iter()
        .filter(|&c| best - scores[c].score <= tolerance)
        .collect();

    if top.len() > 1 && top.iter().all(|&c| vectors[c] == vectors[top[0]]) {
        return Err(RegistryError::TieNotResolvable(
            top.iter().map(|&c| report.methods[c].clone()).collect(),
        ));
    }
    Ok(WeightedChoice {
        chosen: report.methods[top[0]].clone(),
        scores,
        tie_broken_by_order: top.len() > 1,
    })
}

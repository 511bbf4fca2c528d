use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ahp::{ahp_rank, AhpOptions, PairwiseMatrix};
use super::fuzzy::{fuzzy_saw_rank, FuzzyWeights, Tfn, TfnScale};
use super::maut::{maut_rank, Aggregation, UtilityFunction};
use super::promethee::{
    flow_sort, promethee1_partial, promethee2_rank, promethee_flows, Flows, PreferenceFunction,
};
use super::{numeric_column, saw_rank, DecisionResult, MethodError, Ranking, SawOptions};
use crate::model::{DecisionSituation, ProblemKind};
use crate::registry::MethodId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodFamily {
    Maut,
    Ahp,
    Outranking,
    Weighting,
    Fuzzy,
}

impl MethodFamily {
    pub fn from_id(id: &str) -> Option<Self> {
        Some(match id {
            MethodId::MAUT => MethodFamily::Maut,
            MethodId::AHP => MethodFamily::Ahp,
            MethodId::OUTRANKING => MethodFamily::Outranking,
            MethodId::WEIGHTING => MethodFamily::Weighting,
            MethodId::FUZZY => MethodFamily::Fuzzy,
            _ => return None,
        })
    }

    /// Problems the executable implementation covers. Only outranking sorts.
    pub fn supports(self, problem: ProblemKind) -> bool {
        problem != ProblemKind::Sorting || self == MethodFamily::Outranking
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutrankingVariant {
    /// PROMETHEE II complete ranking.
    #[default]
    Complete,
    /// PROMETHEE I partial preorder.
    Partial,
}

/// Method-specific inputs, keyed by criterion name where per-criterion.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MethodConfig {
    /// Size of the subset returned for choice problems (default 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choice_k: Option<usize>,
    /// Let the weighted sum read qualitative labels as scale ranks.
    #[serde(default)]
    pub encode_qualitative: bool,
    /// Outranking preference functions; unlisted criteria use `usual`.
    #[serde(default)]
    pub preferences: BTreeMap<String, PreferenceFunction>,
    #[serde(default)]
    pub outranking_variant: OutrankingVariant,
    /// Descending net-flow cut points, one fewer than the categories.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sorting_thresholds: Option<Vec<f64>>,
    /// MAUT utilities; unlisted criteria get a linear utility over their
    /// observed range.
    #[serde(default)]
    pub utilities: BTreeMap<String, UtilityFunction>,
    #[serde(default)]
    pub maut_form: Aggregation,
    #[serde(default)]
    pub ahp: AhpOptions,
    /// AHP criteria comparisons; falls back to the situation's matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criteria_comparisons: Option<PairwiseMatrix>,
    /// AHP alternative comparisons, one matrix per criterion.
    #[serde(default)]
    pub alternative_comparisons: BTreeMap<String, PairwiseMatrix>,
    /// Fuzzy weights per criterion; crisp situation weights otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuzzy_weights: Option<BTreeMap<String, Tfn>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tfn_scale: Option<TfnScale>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Application {
    pub method: MethodId,
    pub result: DecisionResult,
    /// The ranking behind the result, when the method produces one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranking: Option<Ranking>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flows: Option<Flows>,
}

fn per_criterion<'a, T>(
    situation: &DecisionSituation,
    map: &'a BTreeMap<String, T>,
) -> Result<Vec<Option<&'a T>>, MethodError> {
    if let Some(unknown) = map.keys().find(|k| situation.criterion_index(k).is_none()) {
        return Err(MethodError::MissingConfig(format!(
            "configuration names unknown criterion {unknown}"
        )));
    }
    Ok(situation
        .criteria
        .iter()
        .map(|c| map.get(&c.name))
        .collect())
}

/// Runs a method family on a situation and shapes the output for its
/// problem kind.
pub fn apply_method(
    situation: &DecisionSituation,
    method: &MethodId,
    config: &MethodConfig,
) -> Result<Application, MethodError> {
    let family = MethodFamily::from_id(method.as_str())
        .ok_or_else(|| MethodError::UnknownMethod(method.to_string()))?;
    let situation = situation.validate()?;
    let problem = situation.problem;
    if !family.supports(problem) {
        return Err(MethodError::UnsupportedProblem {
            method: method.to_string(),
            problem,
        });
    }
    let weights = situation.weights();
    let mut flows = None;

    let ranking = match family {
        MethodFamily::Weighting => saw_rank(
            &situation,
            &weights,
            SawOptions {
                encode_qualitative: config.encode_qualitative,
            },
        )?,
        MethodFamily::Maut => {
            let given = per_criterion(&situation, &config.utilities)?;
            let utilities = given
                .into_iter()
                .enumerate()
                .map(|(k, f)| match f {
                    Some(f) => Ok(f.clone()),
                    None => {
                        let column = numeric_column(&situation, k, true)?;
                        let lo = column.iter().copied().fold(f64::INFINITY, f64::min);
                        let hi = column.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                        UtilityFunction::linear(lo, hi, situation.criteria[k].direction).map_err(
                            |_| {
                                MethodError::MissingConfig(format!(
                                    "criterion {} is constant; give it a utility function",
                                    situation.criteria[k].name
                                ))
                            },
                        )
                    }
                })
                .collect::<Result<Vec<_>, MethodError>>()?;
            maut_rank(&situation, &utilities, &weights, config.maut_form)?
        }
        MethodFamily::Ahp => {
            let criteria_matrix = match (
                &config.criteria_comparisons,
                &situation.criteria_comparisons,
            ) {
                (Some(m), _) => m.clone(),
                (None, Some(rows)) => PairwiseMatrix::new(rows.clone())?,
                (None, None) => {
                    return Err(MethodError::MissingConfig(
                        "AHP needs criteria comparisons".into(),
                    ))
                }
            };
            let matrices = per_criterion(&situation, &config.alternative_comparisons)?
                .into_iter()
                .zip(&situation.criteria)
                .map(|(m, c)| {
                    m.cloned().ok_or_else(|| {
                        MethodError::MissingConfig(format!(
                            "AHP needs alternative comparisons for {}",
                            c.name
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            ahp_rank(
                &situation.alternatives,
                &criteria_matrix,
                &matrices,
                config.ahp,
            )?
        }
        MethodFamily::Outranking => {
            let prefs: Vec<PreferenceFunction> = per_criterion(&situation, &config.preferences)?
                .into_iter()
                .map(|p| p.copied().unwrap_or_default())
                .collect();
            let f = promethee_flows(&situation, &weights, &prefs)?;
            let ranking = match config.outranking_variant {
                OutrankingVariant::Complete => promethee2_rank(&f),
                OutrankingVariant::Partial => promethee1_partial(&f),
            };
            flows = Some(f);
            ranking
        }
        MethodFamily::Fuzzy => {
            let fuzzy_weights = match &config.fuzzy_weights {
                None => FuzzyWeights::Crisp(weights.clone()),
                Some(map) => FuzzyWeights::Fuzzy(
                    per_criterion(&situation, map)?
                        .into_iter()
                        .zip(&situation.criteria)
                        .map(|(w, c)| {
                            w.copied().ok_or_else(|| {
                                MethodError::MissingConfig(format!(
                                    "no fuzzy weight for {}",
                                    c.name
                                ))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                ),
            };
            let scale = config.tfn_scale.clone().unwrap_or_default();
            fuzzy_saw_rank(&situation, &fuzzy_weights, &scale)?
        }
    };

    let result = match problem {
        ProblemKind::Choice => DecisionResult::ChoiceSubset {
            alternatives: ranking.top(config.choice_k.unwrap_or(1)),
        },
        ProblemKind::Ranking => DecisionResult::RankingResult {
            ranking: ranking.clone(),
        },
        ProblemKind::Sorting => {
            let thresholds = config.sorting_thresholds.as_ref().ok_or_else(|| {
                MethodError::MissingConfig("sorting needs net-flow thresholds".into())
            })?;
            let categories = situation.sorting_categories.as_deref().unwrap_or_default();
            let f = flows.as_ref().expect("only outranking sorts");
            DecisionResult::SortingResult {
                assignments: flow_sort(f, thresholds, categories)?,
            }
        }
    };
    Ok(Application {
        method: method.clone(),
        result,
        ranking: Some(ranking),
        flows,
    })
}

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::DecisionResult;
use crate::model::DecisionSituation;
use crate::requirements::MethodRequirements;

/// The four steps of the integration process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcessStep {
    IdentifyRequirements,
    SpecifyRequirements,
    SelectMethod,
    ApplyMethod,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Ok,
    Flashback { step: ProcessStep, reason: String },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    fn back(step: ProcessStep, reason: impl Into<String>) -> Self {
        Verdict::Flashback {
            step,
            reason: reason.into(),
        }
    }
}

/// Checks that a result answers the question that was asked: the right
/// problem kind, every alternative covered, and a choice that actually
/// discriminates.
pub fn validate_result(
    result: &DecisionResult,
    situation: &DecisionSituation,
    reqs: &MethodRequirements,
) -> Verdict {
    let problem = result.problem();
    if problem != situation.problem {
        return Verdict::back(
            ProcessStep::ApplyMethod,
            format!("{problem:?} result for a {:?} problem", situation.problem),
        );
    }
    if reqs.problem.is_some_and(|p| p != problem) {
        return Verdict::back(
            ProcessStep::SpecifyRequirements,
            "requirements name a different problem kind than the situation",
        );
    }

    let known: BTreeSet<&str> = situation.alternatives.iter().map(String::as_str).collect();
    let covered: Vec<&str> = match result {
        DecisionResult::ChoiceSubset { alternatives } => {
            alternatives.iter().map(String::as_str).collect()
        }
        DecisionResult::RankingResult { ranking } => ranking.order(),
        DecisionResult::SortingResult { assignments } => {
            assignments.iter().map(|a| a.alternative.as_str()).collect()
        }
    };
    if let Some(stranger) = covered.iter().find(|a| !known.contains(*a)) {
        return Verdict::back(
            ProcessStep::IdentifyRequirements,
            format!("result mentions unknown alternative {stranger}"),
        );
    }
    let distinct: BTreeSet<&str> = covered.iter().copied().collect();
    if distinct.len() != covered.len() {
        return Verdict::back(
            ProcessStep::ApplyMethod,
            "an alternative appears twice in the result",
        );
    }

    match result {
        DecisionResult::ChoiceSubset { .. } => {
            if distinct.is_empty() {
                Verdict::back(ProcessStep::ApplyMethod, "the choice is empty")
            } else if distinct.len() == known.len() {
                Verdict::back(
                    ProcessStep::ApplyMethod,
                    "the choice keeps every alternative",
                )
            } else {
                Verdict::Ok
            }
        }
        DecisionResult::SortingResult { assignments } => {
            let categories = situation.sorting_categories.as_deref().unwrap_or_default();
            if let Some(a) = assignments
                .iter()
                .find(|a| !categories.contains(&a.category))
            {
                return Verdict::back(
                    ProcessStep::ApplyMethod,
                    format!("unknown category {}", a.category),
                );
            }
            coverage(distinct.len(), known.len())
        }
        DecisionResult::RankingResult { .. } => coverage(distinct.len(), known.len()),
    }
}

fn coverage(covered: usize, total: usize) -> Verdict {
    if covered == total {
        Verdict::Ok
    } else {
        Verdict::back(
            ProcessStep::IdentifyRequirements,
            format!("result covers {covered} of {total} alternatives"),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::methods::{Ranking, SortAssignment};
    use crate::model::{AlternativesNature, Criterion, Direction, ProblemKind};

    fn situation(problem: ProblemKind) -> DecisionSituation {
        DecisionSituation {
            title: None,
            problem,
            alternatives: ["a", "b", "c"].map(String::from).to_vec(),
            alternatives_nature: AlternativesNature::Discrete,
            incompatibility_present: None,
            decision_maker_count: 1,
            sorting_categories: Some(vec!["in".into(), "out".into()]),
            weighting: None,
            criteria_comparisons: None,
            criteria: vec![Criterion::quantitative("c", Direction::Maximize, 1.0)],
            performance: vec![vec![1.0.into()], vec![2.0.into()], vec![3.0.into()]],
        }
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn full_ranking_is_ok() {
        let ranking = Ranking::from_scores(&names(&["a", "b", "c"]), &[0.1, 0.5, 0.2]);
        let verdict = validate_result(
            &DecisionResult::RankingResult { ranking },
            &situation(ProblemKind::Ranking),
            &MethodRequirements::default(),
        );
        assert_eq!(verdict, Verdict::Ok);
    }

    #[test]
    fn partial_ranking_goes_back_to_requirements() {
        let ranking = Ranking::from_scores(&names(&["a", "b"]), &[0.1, 0.5]);
        let verdict = validate_result(
            &DecisionResult::RankingResult { ranking },
            &situation(ProblemKind::Ranking),
            &MethodRequirements::default(),
        );
        assert!(matches!(
            verdict,
            Verdict::Flashback {
                step: ProcessStep::IdentifyRequirements,
                ..
            }
        ));
    }

    #[test]
    fn choice_must_discriminate() {
        let s = situation(ProblemKind::Choice);
        let all = DecisionResult::ChoiceSubset {
            alternatives: names(&["a", "b", "c"]),
        };
        assert!(matches!(
            validate_result(&all, &s, &MethodRequirements::default()),
            Verdict::Flashback {
                step: ProcessStep::ApplyMethod,
                ..
            }
        ));
        let none = DecisionResult::ChoiceSubset {
            alternatives: vec![],
        };
        assert!(!validate_result(&none, &s, &MethodRequirements::default()).is_ok());
        let one = DecisionResult::ChoiceSubset {
            alternatives: names(&["b"]),
        };
        assert!(validate_result(&one, &s, &MethodRequirements::default()).is_ok());
    }

    #[test]
    fn wrong_variant_goes_back_to_application() {
        let sorting = DecisionResult::SortingResult {
            assignments: vec![SortAssignment {
                alternative: "a".into(),
                category: "in".into(),
            }],
        };
        assert!(matches!(
            validate_result(
                &sorting,
                &situation(ProblemKind::Choice),
                &MethodRequirements::default()
            ),
            Verdict::Flashback {
                step: ProcessStep::ApplyMethod,
                ..
            }
        ));
    }

    #[test]
    fn sorting_checks_categories() {
        let s = situation(ProblemKind::Sorting);
        let mk = |cat: &str| DecisionResult::SortingResult {
            assignments: ["a", "b", "c"]
                .iter()
                .map(|a| SortAssignment {
                    alternative: a.to_string(),
                    category: cat.to_string(),
                })
                .collect(),
        };
        assert!(validate_result(&mk("in"), &s, &MethodRequirements::default()).is_ok());
        assert!(!validate_result(&mk("maybe"), &s, &MethodRequirements::default()).is_ok());
    }
}

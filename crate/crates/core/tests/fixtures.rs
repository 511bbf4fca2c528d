use std::collections::BTreeSet;

use mcdm_engine::methods::promethee::PreferenceFunction;
use mcdm_engine::methods::{apply_method, saw_rank, DecisionResult, SawOptions};
use mcdm_engine::model::{AlternativesNature, DataType, Direction, PerformanceValue, ProblemKind};
use mcdm_engine::pipeline::{
    fixtures_dir, fuzzy_registry_file, load_method_config, load_situation, load_usage, Fixture,
};
use mcdm_engine::registry::{fuzzy_interface, MethodId, Registry};
use mcdm_engine::requirements::{
    derive_requirements, CountBucket, DeriveOptions, Easiness, MethodRequirements, SkillLevel,
    UsagePreferences, WeightingType,
};
use mcdm_engine::DecisionSituation;

mod common;

fn derive(f: Fixture) -> MethodRequirements {
    let situation = load_situation(&f.situation()).unwrap();
    let usage = load_usage(f.usage().as_deref()).unwrap();
    derive_requirements(&situation, &usage, DeriveOptions::default()).unwrap()
}

#[test]
fn tools_requirements() {
    assert_eq!(
        derive(Fixture::Tools),
        MethodRequirements {
            problem: Some(ProblemKind::Choice),
            count_bucket: Some(CountBucket::Medium),
            nature: Some(AlternativesNature::Discrete),
            incompatibility: None,
            data_type_required: Some(BTreeSet::from([DataType::Quantitative])),
            measure_scale_needed: None,
            weighting_type: Some(WeightingType::Simple),
            usage: UsagePreferences {
                easiness_required: Some(Easiness::Easy),
                skills_available: Some(SkillLevel::Weak),
                ..Default::default()
            },
        }
    );
}

#[test]
fn risks_requirements() {
    assert_eq!(
        derive(Fixture::Risks),
        MethodRequirements {
            problem: Some(ProblemKind::Ranking),
            count_bucket: Some(CountBucket::Great),
            nature: Some(AlternativesNature::Discrete),
            data_type_required: Some(BTreeSet::from([
                DataType::Quantitative,
                DataType::Qualitative
            ])),
            ..Default::default()
        }
    );
}

#[test]
fn use_case_requirements() {
    assert_eq!(
        derive(Fixture::UseCases),
        MethodRequirements {
            problem: Some(ProblemKind::Choice),
            count_bucket: Some(CountBucket::Great),
            nature: Some(AlternativesNature::Discrete),
            data_type_required: Some(BTreeSet::from([
                DataType::Quantitative,
                DataType::Qualitative,
                DataType::Fuzzy
            ])),
            usage: UsagePreferences {
                tool_required: Some(true),
                ..Default::default()
            },
            ..Default::default()
        }
    );
}

#[test]
fn fixture_sizes() {
    let sizes = [
        (Fixture::Tools, 10, 17),
        (Fixture::Risks, 25, 8),
        (Fixture::UseCases, 30, 5),
    ];
    for (f, n, m) in sizes {
        let s = load_situation(&f.situation()).unwrap().validate().unwrap();
        assert_eq!(
            (s.alternatives.len(), s.criteria.len()),
            (n, m),
            "{}",
            f.name()
        );
    }
}

#[test]
fn retained_scale_keeps_risk_candidates() {
    let situation = load_situation(&Fixture::Risks.situation()).unwrap();
    let options = DeriveOptions {
        retain_measure_scale: true,
        ..Default::default()
    };
    let reqs = derive_requirements(&situation, &UsagePreferences::default(), options).unwrap();
    assert_eq!(reqs.measure_scale_needed, Some(true));
    let report = mcdm_engine::registry::match_methods(&reqs, &Registry::crisp());
    assert_eq!(
        report.candidates,
        [MethodId::new("maut"), MethodId::new("outranking")]
    );
    assert_eq!(report.rows.len(), 5);
}

#[test]
fn registry_files_match_builtins() {
    let crisp = Registry::from_file(fixtures_dir().join("registry").join("crisp.toml")).unwrap();
    assert_eq!(crisp, Registry::crisp());
    assert_eq!(crisp.snapshot_id(), Registry::crisp().snapshot_id());
    let fuzzy = Registry::from_file(fuzzy_registry_file()).unwrap();
    assert_eq!(fuzzy.methods, [fuzzy_interface()]);
}

#[test]
fn weighting_picks_best_tool() {
    let s = load_situation(&Fixture::Tools.situation())
        .unwrap()
        .validate()
        .unwrap();
    let config = load_method_config(Some(&Fixture::Tools.config())).unwrap();
    let app = apply_method(&s, &MethodId::new("weighting"), &config).unwrap();
    let weights: Vec<f64> = s.criteria.iter().map(|c| c.weight).collect();
    let saw = saw_rank(&s, &weights, SawOptions::default()).unwrap();
    assert_eq!(
        app.result,
        DecisionResult::ChoiceSubset {
            alternatives: saw.top(1)
        }
    );
}

fn subsample(s: &DecisionSituation, rows: &[usize]) -> DecisionSituation {
    let mut sub = s.clone();
    sub.alternatives = rows.iter().map(|&i| s.alternatives[i].clone()).collect();
    sub.performance = rows.iter().map(|&i| s.performance[i].clone()).collect();
    sub
}

fn encoded_table(s: &DecisionSituation) -> Vec<Vec<f64>> {
    s.performance
        .iter()
        .map(|row| {
            row.iter()
                .zip(&s.criteria)
                .map(|(v, c)| match v {
                    PerformanceValue::Numeric(x) => *x,
                    PerformanceValue::Label(l) => c
                        .scale
                        .as_ref()
                        .unwrap()
                        .iter()
                        .position(|x| x == l)
                        .unwrap() as f64,
                    PerformanceValue::FuzzyTriple(_) => unreachable!(),
                })
                .collect()
        })
        .collect()
}

#[test]
fn risks_outranking_conserves_flows() {
    let s = load_situation(&Fixture::Risks.situation())
        .unwrap()
        .validate()
        .unwrap();
    let config = load_method_config(Some(&Fixture::Risks.config())).unwrap();
    let outranking = MethodId::new("outranking");

    let app = apply_method(&s, &outranking, &config).unwrap();
    let flows = app.flows.unwrap();
    assert!(flows.net.iter().sum::<f64>().abs() < 1e-12);
    match app.result {
        DecisionResult::RankingResult { ranking } => assert_eq!(ranking.order().len(), 25),
        other => panic!("expected a ranking, got {other:?}"),
    }

    let sub = subsample(&s, &[0, 6, 12, 18, 24]);
    let flows = apply_method(&sub, &outranking, &config)
        .unwrap()
        .flows
        .unwrap();
    let dirs: Vec<Direction> = sub.criteria.iter().map(|c| c.direction).collect();
    let weights: Vec<f64> = sub.criteria.iter().map(|c| c.weight).collect();
    let prefs: Vec<PreferenceFunction> = sub
        .criteria
        .iter()
        .map(|c| {
            config
                .preferences
                .get(&c.name)
                .cloned()
                .unwrap_or(PreferenceFunction::Usual)
        })
        .collect();
    let expected = common::oracle_flows(&encoded_table(&sub), &dirs, &weights, &prefs);
    for (got, want) in flows.net.iter().zip(&expected) {
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
    assert!(flows.net.iter().sum::<f64>().abs() < 1e-12);
}

#[test]
fn use_cases_fuzzy_choice() {
    let s = load_situation(&Fixture::UseCases.situation())
        .unwrap()
        .validate()
        .unwrap();
    let config = load_method_config(Some(&Fixture::UseCases.config())).unwrap();
    let app = apply_method(&s, &MethodId::new("fuzzy"), &config).unwrap();
    let DecisionResult::ChoiceSubset { alternatives } = app.result else {
        panic!("expected a choice");
    };
    assert_eq!(alternatives.len(), 5);
    let ranking = app.ranking.unwrap();
    assert_eq!(alternatives, ranking.top(5));
}

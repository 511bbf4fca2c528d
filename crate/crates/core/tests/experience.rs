use std::sync::Arc;
use std::thread;

use mcdm_engine::model::ProblemKind;
use mcdm_engine::pipeline::{self, Fixture, RunPlan, StrategyPlan};
use mcdm_engine::registry::{
    builtin_interfaces, select_by_experience, ExperienceStore, MethodId, Strategy,
};
use mcdm_engine::requirements::MethodRequirements;

#[test]
fn recorded_run_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("experience.jsonl");
    let f = Fixture::Tools;
    let plan = RunPlan::new(f.situation(), dir.path().join("first"))
        .with_usage(f.usage().unwrap())
        .with_method_config(f.config())
        .with_experience(&store, true);
    assert_eq!(pipeline::run(&plan).unwrap().exit_code, 0);
    let base = ExperienceStore::new(&store).load().unwrap();
    assert_eq!(base.len(), 1);
    assert_eq!(base.records()[0].method_id, "weighting");

    let reuse = RunPlan {
        output_dir: dir.path().join("second"),
        ..plan.with_strategy(StrategyPlan::Experience)
    };
    let report = pipeline::run(&reuse).unwrap();
    assert_eq!(report.selection_report.strategy_used, Strategy::Experience);
    assert_eq!(report.chosen().unwrap(), &"weighting");
    // a reused decision is not recorded again
    assert_eq!(ExperienceStore::new(&store).load().unwrap().len(), 1);
}

#[test]
fn experience_without_a_match_falls_back_to_search() {
    let dir = tempfile::tempdir().unwrap();
    let f = Fixture::Tools;
    let plan = RunPlan::new(f.situation(), dir.path())
        .with_usage(f.usage().unwrap())
        .with_strategy(StrategyPlan::Experience)
        .with_experience(dir.path().join("empty.jsonl"), false);
    let report = pipeline::run(&plan).unwrap();
    assert_eq!(report.selection_report.strategy_used, Strategy::Search);
    assert_eq!(report.chosen().unwrap(), &"weighting");
}

#[test]
fn concurrent_appends_stay_ordered() {
    let dir = tempfile::tempdir().unwrap();
    let store = Arc::new(ExperienceStore::new(dir.path().join("shared.jsonl")));
    let registry = Arc::new(builtin_interfaces());
    let methods = ["maut", "ahp", "outranking", "weighting"];
    let handles: Vec<_> = (0..8)
        .map(|t| {
            let store = Arc::clone(&store);
            let registry = Arc::clone(&registry);
            thread::spawn(move || {
                let reqs = MethodRequirements {
                    problem: Some(if t % 2 == 0 {
                        ProblemKind::Choice
                    } else {
                        ProblemKind::Ranking
                    }),
                    ..Default::default()
                };
                for i in 0..10 {
                    store
                        .append(&reqs, &MethodId::new(methods[(t + i) % 4]), &registry)
                        .unwrap();
                }
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
    let base = store.load().unwrap();
    assert_eq!(base.len(), 80);
    let stamps: Vec<u64> = base.records().iter().map(|r| r.timestamp).collect();
    assert!(stamps.windows(2).all(|w| w[0] < w[1]));

    let choice = MethodRequirements {
        problem: Some(ProblemKind::Choice),
        ..Default::default()
    };
    let latest = base
        .records()
        .iter()
        .rev()
        .find(|r| r.fingerprint == choice.fingerprint())
        .unwrap();
    assert_eq!(
        select_by_experience(&choice, &base).unwrap(),
        latest.method_id
    );
}

#[test]
fn corrupt_store_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("bad.jsonl");
    std::fs::write(&store, "not json\n").unwrap();
    let f = Fixture::Tools;
    let plan = RunPlan::new(f.situation(), dir.path())
        .with_usage(f.usage().unwrap())
        .with_strategy(StrategyPlan::Experience)
        .with_experience(&store, false);
    assert_eq!(pipeline::run(&plan).unwrap_err().exit_code(), 5);
}

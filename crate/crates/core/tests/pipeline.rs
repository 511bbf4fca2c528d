use std::fs;

use mcdm_engine::methods::{ProcessStep, Verdict};
use mcdm_engine::pipeline::{
    self, emit_matrix, execute, Fixture, FlashbackAction, MatrixLayout, RegistrySource, RunPlan,
    StrategyPlan, EXIT_INVALID_RESULT, EXIT_NO_METHOD, EXIT_TIE,
};
use mcdm_engine::registry::{Attribute, Strategy};

fn tools_plan(out: &std::path::Path) -> RunPlan {
    let f = Fixture::Tools;
    RunPlan::new(f.situation(), out)
        .with_usage(f.usage().unwrap())
        .with_method_config(f.config())
}

#[test]
fn tools_run_chooses_weighting() {
    let dir = tempfile::tempdir().unwrap();
    let report = pipeline::run(&tools_plan(dir.path())).unwrap();
    assert_eq!(report.exit_code, 0);
    assert_eq!(report.iterations.len(), 1);
    assert_eq!(report.chosen().unwrap(), &"weighting");
    assert_eq!(report.validation_verdict, Verdict::Ok);
    assert!(report.result.is_some());
    let matrix = fs::read_to_string(dir.path().join("matrix.csv")).unwrap();
    assert_eq!(matrix.lines().count(), 9);
    assert!(matrix.ends_with("candidate,0,0,0,1\n"));
    let json: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["registry"]["methods"].as_array().unwrap().len(), 4);
    assert_eq!(
        json["iterations"][0]["registry_snapshot"]
            .as_str()
            .unwrap()
            .len(),
        16
    );
}

#[test]
fn tools_full_grid() {
    let dir = tempfile::tempdir().unwrap();
    let report = execute(&tools_plan(dir.path())).unwrap();
    let grid = emit_matrix(&report.selection_report, MatrixLayout::FullGrid);
    let lines: Vec<&str> = grid.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[4], "incompatibility,,,,");
    assert_eq!(lines[6], "measure_scale,,,,");
    assert_eq!(lines[8], "tool,,,,");
    assert_eq!(lines[7], "weighting,1,1,1,1");
}

#[test]
fn risks_search_is_a_tie() {
    let f = Fixture::Risks;
    let dir = tempfile::tempdir().unwrap();
    let report =
        pipeline::run(&RunPlan::new(f.situation(), dir.path()).with_method_config(f.config()))
            .unwrap();
    assert_eq!(report.exit_code, EXIT_TIE);
    assert!(report.result.is_none());
    assert!(matches!(
        report.validation_verdict,
        Verdict::Flashback {
            step: ProcessStep::SelectMethod,
            ..
        }
    ));
}

#[test]
fn risks_weighted_run_ranks_all_risks() {
    let f = Fixture::Risks;
    let dir = tempfile::tempdir().unwrap();
    let plan = RunPlan::new(f.situation(), dir.path())
        .with_method_config(f.config())
        .with_strategy(StrategyPlan::Weighted(f.weights().unwrap()));
    let report = pipeline::run(&plan).unwrap();
    assert_eq!(report.exit_code, 0);
    assert_eq!(report.selection_report.strategy_used, Strategy::Weighted);
    assert_eq!(report.chosen().unwrap(), &"outranking");
    assert_eq!(report.ranking.unwrap().order().len(), 25);
    let flows = report.flows.unwrap();
    assert!(flows.net.iter().sum::<f64>().abs() < 1e-12);
}

#[test]
fn relaxing_data_type_widens_use_case_candidates() {
    let f = Fixture::UseCases;
    let dir = tempfile::tempdir().unwrap();
    let plan = RunPlan::new(f.situation(), dir.path())
        .with_usage(f.usage().unwrap())
        .with_flashback(FlashbackAction::RelaxRequirement(Attribute::DataType));
    let report = pipeline::run(&plan).unwrap();
    assert_eq!(report.iterations.len(), 2);
    assert!(!report.iterations[1]
        .expressed
        .contains(&Attribute::DataType));
    let names: Vec<&str> = report.iterations[1]
        .candidates
        .iter()
        .map(|m| m.as_str())
        .collect();
    assert_eq!(names, ["outranking", "weighting"]);
    // two candidates and no weighting strategy
    assert_eq!(report.exit_code, EXIT_TIE);
    assert_eq!(
        report.iterations[0].registry_snapshot,
        report.iterations[1].registry_snapshot
    );
}

#[test]
fn unused_actions_are_not_consumed() {
    let f = Fixture::UseCases;
    let dir = tempfile::tempdir().unwrap();
    let plan = RunPlan::new(f.situation(), dir.path())
        .with_usage(f.usage().unwrap())
        .with_method_config(f.config())
        .with_flashback(FlashbackAction::RelaxRequirement(Attribute::Easiness))
        .with_flashback(FlashbackAction::ExtendRegistry(
            pipeline::BUILTIN_FUZZY.into(),
        ))
        .with_flashback(FlashbackAction::RelaxRequirement(Attribute::Tool));
    let report = pipeline::run(&plan).unwrap();
    let actions: Vec<_> = report.iterations.iter().map(|i| i.action.clone()).collect();
    assert_eq!(
        actions,
        [
            None,
            Some(FlashbackAction::RelaxRequirement(Attribute::Easiness)),
            Some(FlashbackAction::ExtendRegistry(
                pipeline::BUILTIN_FUZZY.into()
            )),
        ]
    );
    assert_ne!(
        report.iterations[1].registry_snapshot,
        report.iterations[2].registry_snapshot
    );
    assert_eq!(report.exit_code, 0);
}

#[test]
fn exhausted_policy_exits_two() {
    let f = Fixture::UseCases;
    let dir = tempfile::tempdir().unwrap();
    let plan = RunPlan::new(f.situation(), dir.path())
        .with_usage(f.usage().unwrap())
        .with_flashback(FlashbackAction::RelaxRequirement(Attribute::Tool));
    let report = pipeline::run(&plan).unwrap();
    assert_eq!(report.exit_code, EXIT_NO_METHOD);
    assert_eq!(report.iterations.len(), 2);
    assert!(dir.path().join("report.json").exists());
}

#[test]
fn undiscriminating_choice_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("all.toml");
    fs::write(&config, "choice_k = 10\n").unwrap();
    let plan = RunPlan {
        method_config_path: Some(config),
        ..tools_plan(&dir.path().join("out"))
    };
    let report = pipeline::run(&plan).unwrap();
    assert_eq!(report.exit_code, EXIT_INVALID_RESULT);
    assert!(matches!(
        report.validation_verdict,
        Verdict::Flashback {
            step: ProcessStep::ApplyMethod,
            ..
        }
    ));
}

#[test]
fn bad_inputs_exit_five() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.toml");
    fs::write(&broken, "problem = \"choice\"\nalternatives = [\"only\"]\n").unwrap();
    let err = pipeline::run(&RunPlan::new(&broken, dir.path())).unwrap_err();
    assert_eq!(err.exit_code(), 5);

    let missing =
        pipeline::run(&RunPlan::new(dir.path().join("nope.toml"), dir.path())).unwrap_err();
    assert_eq!(missing.exit_code(), 5);

    let bad_registry = tools_plan(dir.path()).with_registry(RegistrySource::File(broken));
    assert_eq!(pipeline::run(&bad_registry).unwrap_err().exit_code(), 5);
}

#[test]
fn crisp_registry_file_behaves_like_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let builtin = execute(&tools_plan(dir.path())).unwrap();
    let file = execute(&tools_plan(dir.path()).with_registry(RegistrySource::File(
        pipeline::fixtures_dir().join("registry").join("crisp.toml"),
    )))
    .unwrap();
    assert_eq!(builtin, file);
}

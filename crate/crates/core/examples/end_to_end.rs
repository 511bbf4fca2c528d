//! Full runs on the three cases, including a flashback for the use cases.

use mcdm_engine::pipeline::{self, Fixture, FlashbackAction, RunPlan, StrategyPlan, BUILTIN_FUZZY};

fn main() -> anyhow::Result<()> {
    let out = tempfile::tempdir()?;
    let tools = Fixture::Tools;
    let risks = Fixture::Risks;
    let uc = Fixture::UseCases;
    let plans = [
        RunPlan::new(tools.situation(), out.path().join("tools"))
            .with_usage(tools.usage().unwrap())
            .with_method_config(tools.config()),
        RunPlan::new(risks.situation(), out.path().join("risks"))
            .with_method_config(risks.config())
            .with_strategy(StrategyPlan::Weighted(risks.weights().unwrap())),
        RunPlan::new(uc.situation(), out.path().join("use_cases"))
            .with_usage(uc.usage().unwrap())
            .with_method_config(uc.config())
            .with_flashback(FlashbackAction::ExtendRegistry(BUILTIN_FUZZY.into())),
    ];
    for plan in &plans {
        let report = pipeline::run(plan)?;
        println!("== {} ==", report.title.as_deref().unwrap_or("untitled"));
        for (i, it) in report.iterations.iter().enumerate() {
            let action = it
                .action
                .as_ref()
                .map_or("start".to_string(), ToString::to_string);
            let candidates: Vec<&str> = it.candidates.iter().map(|m| m.as_str()).collect();
            println!(
                "  round {} [{action}] registry {} candidates {candidates:?}",
                i + 1,
                it.registry_snapshot
            );
        }
        let chosen = report.chosen().map_or("none", |m| m.as_str());
        println!("  chosen {chosen}, exit {}", report.exit_code);
        if let Some(result) = &report.result {
            println!("  result {}", serde_json::to_string(result)?);
        }
    }
    Ok(())
}

//! Derive method requirements for each bundled case.

use mcdm_engine::pipeline::{load_situation, load_usage, Fixture};
use mcdm_engine::requirements::{derive_requirements, DeriveOptions};

fn main() -> anyhow::Result<()> {
    for f in Fixture::ALL {
        let situation = load_situation(&f.situation())?;
        let usage = load_usage(f.usage().as_deref())?;
        let reqs = derive_requirements(&situation, &usage, DeriveOptions::default())?;
        println!("{}:\n{}\n", f.name(), serde_json::to_string_pretty(&reqs)?);
    }

    // measure-scale retention is opt-in
    let risks = load_situation(&Fixture::Risks.situation())?;
    let options = DeriveOptions {
        retain_measure_scale: true,
        ..Default::default()
    };
    let reqs = derive_requirements(&risks, &Default::default(), options)?;
    println!(
        "risks with scale retained: measure_scale_needed = {:?}",
        reqs.measure_scale_needed
    );
    Ok(())
}

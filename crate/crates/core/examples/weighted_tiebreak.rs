//! Two methods fit the risks case; weighting tool availability settles it.

use mcdm_engine::pipeline::{self, Fixture};
use mcdm_engine::registry::{select_by_weighting, Attribute, AttributeWeights, Registry};
use mcdm_engine::requirements::DeriveOptions;

fn main() -> anyhow::Result<()> {
    let registry = Registry::crisp();
    let f = Fixture::Risks;
    let (_, report) = pipeline::select(&f.situation(), None, &registry, DeriveOptions::default())?;
    println!("candidates: {}", names(&report.candidates));

    let weights = AttributeWeights::from([(Attribute::Tool, 1.0)]);
    let choice = select_by_weighting(&report, &registry, &weights)?;
    for s in &choice.scores {
        println!("  {:<11} {:.2}", s.method.as_str(), s.score);
    }
    println!("chosen: {}", choice.chosen);

    // weighting only the data-type row cannot separate the two
    let flat = AttributeWeights::from([(Attribute::DataType, 1.0)]);
    match select_by_weighting(&report, &registry, &flat) {
        Ok(c) => println!(
            "data type only: {} (order fallback: {})",
            c.chosen, c.tie_broken_by_order
        ),
        Err(e) => println!("data type only: {e}"),
    }
    Ok(())
}

fn names(ids: &[mcdm_engine::MethodId]) -> String {
    ids.iter()
        .map(|m| m.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

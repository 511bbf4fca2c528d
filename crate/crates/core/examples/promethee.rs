//! Outranking flows on the risks case: complete order, partial order and sorting.

use mcdm_engine::methods::promethee::{
    flow_sort, promethee1_partial, promethee2_rank, promethee_flows, PreferenceFunction,
};
use mcdm_engine::pipeline::{load_method_config, load_situation, Fixture};

fn main() -> anyhow::Result<()> {
    let f = Fixture::Risks;
    let situation = load_situation(&f.situation())?.validate()?;
    let config = load_method_config(Some(&f.config()))?;
    let weights: Vec<f64> = situation.criteria.iter().map(|c| c.weight).collect();
    let prefs: Vec<PreferenceFunction> = situation
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

    let flows = promethee_flows(&situation, &weights, &prefs)?;
    println!("sum of net flows: {:e}", flows.net.iter().sum::<f64>());

    let complete = promethee2_rank(&flows);
    println!("top five: {:?}", &complete.order()[..5]);

    let partial = promethee1_partial(&flows);
    if let Some(p) = &partial.partial {
        println!(
            "partial order: {} preferences, {} indifferences, {} incomparable pairs",
            p.preferred.len(),
            p.indifferent.len(),
            p.incomparable.len()
        );
    }

    let categories: Vec<String> = ["act now", "watch", "accept"].map(String::from).to_vec();
    let sorted = flow_sort(&flows, &[0.1, -0.1], &categories)?;
    for c in &categories {
        let n = sorted.iter().filter(|a| &a.category == c).count();
        println!("  {c:<8} {n}");
    }
    Ok(())
}

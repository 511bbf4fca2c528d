//! Utility functions on the tools case, additive and multiplicative.

use std::collections::BTreeMap;

use mcdm_engine::methods::maut::{maut_rank, Aggregation, UtilityFunction};
use mcdm_engine::methods::{apply_method, MethodConfig};
use mcdm_engine::model::{Direction, PerformanceValue};
use mcdm_engine::pipeline::{load_situation, Fixture};
use mcdm_engine::registry::MethodId;

fn main() -> anyhow::Result<()> {
    let situation = load_situation(&Fixture::Tools.situation())?.validate()?;
    let weights: Vec<f64> = situation.criteria.iter().map(|c| c.weight).collect();

    // concave utility on grades, linear on costs
    let utilities = situation
        .criteria
        .iter()
        .map(|c| match c.direction {
            Direction::Maximize => UtilityFunction::new(vec![(1.0, 0.0), (3.0, 0.7), (5.0, 1.0)]),
            Direction::Minimize => UtilityFunction::linear(1.0, 3.0, Direction::Minimize),
        })
        .collect::<Result<Vec<_>, _>>()?;
    for form in [Aggregation::Additive, Aggregation::Multiplicative] {
        let ranking = maut_rank(&situation, &utilities, &weights, form)?;
        println!("{form:?}: {:?}", &ranking.order()[..3]);
    }

    // the same through the dispatcher, with one utility overridden
    let config = MethodConfig {
        utilities: BTreeMap::from([(
            "acquisition_cost".to_string(),
            UtilityFunction::new(vec![(1.0, 1.0), (2.0, 0.2), (3.0, 0.0)])?,
        )]),
        ..Default::default()
    };
    let app = apply_method(&situation, &MethodId::new("maut"), &config)?;
    println!("dispatcher: {:?}", app.result);

    let PerformanceValue::Numeric(x) = situation.performance[0][0] else {
        unreachable!()
    };
    println!("u({x}) = {:?}", utilities[0].evaluate(x));
    Ok(())
}

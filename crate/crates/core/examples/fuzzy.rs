//! Fuzzy weighted sum on the use cases, ranked by centroid.

use mcdm_engine::methods::fuzzy::{fuzzy_saw_rank, FuzzyWeights, Tfn, TfnScale};
use mcdm_engine::pipeline::{load_situation, Fixture};

fn main() -> anyhow::Result<()> {
    let situation = load_situation(&Fixture::UseCases.situation())?.validate()?;
    let crisp: Vec<f64> = situation.criteria.iter().map(|c| c.weight).collect();
    let ranking = fuzzy_saw_rank(
        &situation,
        &FuzzyWeights::Crisp(crisp.clone()),
        &TfnScale::default(),
    )?;
    println!("crisp weights, top five: {:?}", ranking.top(5));

    // vague weights: each crisp weight widened by 20%
    let vague = crisp
        .iter()
        .map(|&w| Tfn::new(0.8 * w, w, 1.2 * w))
        .collect::<Result<Vec<_>, _>>()?;
    let ranking = fuzzy_saw_rank(
        &situation,
        &FuzzyWeights::Fuzzy(vague),
        &TfnScale::default(),
    )?;
    println!("fuzzy weights, top five: {:?}", ranking.top(5));
    if let Some(scores) = &ranking.fuzzy_scores {
        let best = ranking.order()[0];
        let i = situation
            .alternatives
            .iter()
            .position(|a| a == best)
            .unwrap();
        println!(
            "{best}: {:?} centroid {:.4}",
            scores[i],
            scores[i].centroid()
        );
    }
    Ok(())
}

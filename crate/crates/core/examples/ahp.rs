//! Pairwise comparisons: priorities, consistency and a small ranking.

use mcdm_engine::methods::ahp::{
    ahp_consistency, ahp_priorities, ahp_rank, AhpOptions, PairwiseMatrix, PriorityMode,
};

fn main() -> anyhow::Result<()> {
    let criteria = PairwiseMatrix::new(vec![
        vec![1.0, 3.0, 5.0],
        vec![1.0 / 3.0, 1.0, 3.0],
        vec![1.0 / 5.0, 1.0 / 3.0, 1.0],
    ])?;
    for mode in [PriorityMode::GeometricMean, PriorityMode::Eigenvector] {
        let p = ahp_priorities(&criteria, mode)?;
        println!("{mode:?}: {:.6?} lambda_max {:.6}", p.weights, p.lambda_max);
    }
    let c = ahp_consistency(&criteria)?;
    println!("CI {:.4} CR {:.4}", c.ci, c.cr);

    let alternatives: Vec<String> = ["tool_a", "tool_b", "tool_c"].map(String::from).to_vec();
    let per_criterion = [
        PairwiseMatrix::from_weights(&[0.5, 0.3, 0.2])?,
        PairwiseMatrix::from_weights(&[0.2, 0.5, 0.3])?,
        PairwiseMatrix::from_weights(&[0.1, 0.2, 0.7])?,
    ];
    let ranking = ahp_rank(
        &alternatives,
        &criteria,
        &per_criterion,
        AhpOptions::default(),
    )?;
    for s in &ranking.scores {
        println!("  {} {:.4}", s.alternative, s.score);
    }
    println!("order: {:?}", ranking.order());
    Ok(())
}

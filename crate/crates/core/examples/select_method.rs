//! Match the three cases against the crisp registry and print the matrices.

use mcdm_engine::pipeline::{self, emit_matrix, Fixture, MatrixLayout};
use mcdm_engine::registry::Registry;
use mcdm_engine::requirements::DeriveOptions;

fn main() -> anyhow::Result<()> {
    let registry = Registry::crisp();
    for f in Fixture::ALL {
        let (_, report) = pipeline::select(
            &f.situation(),
            f.usage().as_deref(),
            &registry,
            DeriveOptions::default(),
        )?;
        println!("== {} ==", f.name());
        print!("{}", emit_matrix(&report, MatrixLayout::Expressed));
        match &report.chosen {
            Some(m) => println!("chosen: {m}\n"),
            None => println!(
                "candidates: [{}]\n",
                report
                    .candidates
                    .iter()
                    .map(|m| m.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        }
    }
    Ok(())
}

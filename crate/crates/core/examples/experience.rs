//! Record a decision, then reuse it for identical requirements.

use mcdm_engine::pipeline::{load_situation, load_usage, Fixture};
use mcdm_engine::registry::{builtin_interfaces, select_by_experience, ExperienceStore, MethodId};
use mcdm_engine::requirements::{derive_requirements, DeriveOptions};

fn main() -> anyhow::Result<()> {
    let dir = tempfile::tempdir()?;
    let store = ExperienceStore::new(dir.path().join("experience.jsonl"));
    let registry = builtin_interfaces();

    let f = Fixture::Tools;
    let reqs = derive_requirements(
        &load_situation(&f.situation())?,
        &load_usage(f.usage().as_deref())?,
        DeriveOptions::default(),
    )?;
    println!(
        "before: {:?}",
        select_by_experience(&reqs, &store.load()?).map(|m| m.to_string())
    );

    store.append(&reqs, &MethodId::new("weighting"), &registry)?;
    store.append(&reqs, &MethodId::new("ahp"), &registry)?;
    println!(
        "after two records: {:?}",
        select_by_experience(&reqs, &store.load()?).map(|m| m.to_string())
    );
    print!("{}", std::fs::read_to_string(store.path())?);
    Ok(())
}

//! Decide whether a process step is a decision point worth an MC method.

use mcdm_engine::model::{classify_typology, screen_dm_point, DmPointScreen, GuidanceForm};

fn main() -> anyhow::Result<()> {
    let steps = [
        (
            "select and acquire tools",
            GuidanceForm::Tree,
            true,
            false,
            17,
            1,
        ),
        (
            "write the vision document",
            GuidanceForm::Linear,
            false,
            false,
            1,
            1,
        ),
        ("prioritize use cases", GuidanceForm::Tree, true, true, 5, 3),
    ];
    for (name, guidance_form, offers_arguments, offers_prioritization, criteria, dms) in steps {
        let screen = screen_dm_point(DmPointScreen {
            guidance_form,
            offers_arguments,
            offers_prioritization,
        });
        let typology = classify_typology(criteria, dms)?;
        println!(
            "{name:<28} decision point: {:<5} needs criteria: {:<5} {:?}/{:?} eligible: {}",
            screen.is_dm_point,
            screen.needs_criteria_definition,
            typology.criteria_axis,
            typology.dm_axis,
            typology.mc_eligible
        );
    }
    Ok(())
}

//! End-to-end runs: describe, derive, select (with flashbacks), apply,
//! validate, and write `report.json` plus `matrix.csv`.

mod files;
mod matrix;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use files::{
    fixtures_dir, fuzzy_registry_file, load_method_config, load_situation, load_usage,
    load_weights, read_document, Fixture,
};
pub use matrix::{emit_matrix, MatrixLayout};

use crate::methods::promethee::Flows;
use crate::methods::{
    apply_method, validate_result, DecisionResult, ProcessStep, Ranking, Verdict,
};
use crate::model::{DecisionSituation, ModelError};
use crate::registry::{
    fuzzy_interface, match_methods, select_by_experience, select_by_weighting, Attribute,
    ExperienceStore, MethodId, Registry, RegistryError, SelectionReport, Strategy, WeightedChoice,
};
use crate::requirements::{
    derive_requirements, DeriveOptions, MethodRequirements, RequirementsError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_METHOD: i32 = 2;
pub const EXIT_TIE: i32 = 3;
pub const EXIT_INVALID_RESULT: i32 = 4;
pub const EXIT_INPUT: i32 = 5;

/// Name accepted by [`FlashbackAction::ExtendRegistry`] for the built-in
/// fuzzy family.
pub const BUILTIN_FUZZY: &str = "builtin:fuzzy";

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Situation(#[from] ModelError),
    #[error(transparent)]
    Requirements(#[from] RequirementsError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl PipelineError {
    /// Input and validation failures all map to one code.
    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegistrySource {
    /// The four crisp families.
    #[default]
    Builtin,
    File(PathBuf),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyPlan {
    /// Keep the lone candidate; several candidates are a tie.
    #[default]
    Search,
    /// Break ties with the attribute weights in this file.
    Weighted(PathBuf),
    /// Reuse the latest recorded decision for the same requirements, falling
    /// back to search.
    Experience,
}

/// What to do when a selection round finds no candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlashbackAction {
    RelaxRequirement(Attribute),
    /// A registry file, or [`BUILTIN_FUZZY`].
    ExtendRegistry(String),
}

impl fmt::Display for FlashbackAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlashbackAction::RelaxRequirement(a) => write!(f, "relax:{a}"),
            FlashbackAction::ExtendRegistry(s) => write!(f, "extend:{s}"),
        }
    }
}

impl FromStr for FlashbackAction {
    type Err = String;

    /// `relax:<attribute>` or `extend:<registry file | builtin:fuzzy>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(name) = s.strip_prefix("relax:") {
            Attribute::parse(name)
                .map(FlashbackAction::RelaxRequirement)
                .ok_or_else(|| format!("unknown attribute {name}"))
        } else if let Some(src) = s.strip_prefix("extend:") {
            if src.is_empty() {
                Err("extend needs a registry file".into())
            } else {
                Ok(FlashbackAction::ExtendRegistry(src.to_string()))
            }
        } else {
            Err(format!(
                "expected relax:<attribute> or extend:<registry>, got {s}"
            ))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunPlan {
    pub situation_path: PathBuf,
    pub usage_path: Option<PathBuf>,
    pub registry_source: RegistrySource,
    pub strategy: StrategyPlan,
    /// Applied in order, one per empty selection round.
    pub flashback_policy: Vec<FlashbackAction>,
    pub method_config_path: Option<PathBuf>,
    pub output_dir: PathBuf,
    /// Experience store; falls back to `MCDM_EXPERIENCE_PATH`.
    pub experience_path: Option<PathBuf>,
    /// Record successful decisions in the experience store.
    pub record_experience: bool,
    pub derive: DeriveOptions,
}

impl RunPlan {
    pub fn new(situation: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            situation_path: situation.into(),
            usage_path: None,
            registry_source: RegistrySource::Builtin,
            strategy: StrategyPlan::Search,
            flashback_policy: Vec::new(),
            method_config_path: None,
            output_dir: output_dir.into(),
            experience_path: None,
            record_experience: false,
            derive: DeriveOptions::default(),
        }
    }

    pub fn with_usage(mut self, path: impl Into<PathBuf>) -> Self {
        self.usage_path = Some(path.into());
        self
    }

    pub fn with_method_config(mut self, path: impl Into<PathBuf>) -> Self {
        self.method_config_path = Some(path.into());
        self
    }

    pub fn with_registry(mut self, source: RegistrySource) -> Self {
        self.registry_source = source;
        self
    }

    pub fn with_strategy(mut self, strategy: StrategyPlan) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_flashback(mut self, action: FlashbackAction) -> Self {
        self.flashback_policy.push(action);
        self
    }

    pub fn with_experience(mut self, path: impl Into<PathBuf>, record: bool) -> Self {
        self.experience_path = Some(path.into());
        self.record_experience = record;
        self
    }

    pub fn with_derive_options(mut self, options: DeriveOptions) -> Self {
        self.derive = options;
        self
    }
}

/// One selection round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Iteration {
    /// The flashback applied before this round.
    pub action: Option<FlashbackAction>,
    pub registry_snapshot: String,
    pub expressed: Vec<Attribute>,
    pub candidates: Vec<MethodId>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub title: Option<String>,
    pub derived_requirements: MethodRequirements,
    /// Requirements after relaxations.
    pub final_requirements: MethodRequirements,
    pub selection_report: SelectionReport,
    pub iterations: Vec<Iteration>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weighted_choice: Option<WeightedChoice>,
    pub result: Option<DecisionResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranking: Option<Ranking>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flows: Option<Flows>,
    pub validation_verdict: Verdict,
    pub exit_code: i32,
    /// The registry as it stood after the last round.
    pub registry: Registry,
}

impl RunReport {
    pub fn chosen(&self) -> Option<&MethodId> {
        self.selection_report.chosen.as_ref()
    }
}

/// Loads the registry a plan starts from.
pub fn load_registry(source: &RegistrySource) -> Result<Registry, PipelineError> {
    match source {
        RegistrySource::Builtin => Ok(Registry::crisp()),
        RegistrySource::File(path) => Ok(Registry::from_file(path)?),
    }
}

fn extend_registry(registry: &mut Registry, source: &str) -> Result<(), PipelineError> {
    if source == BUILTIN_FUZZY {
        registry.extend([fuzzy_interface()])?;
    } else {
        let extra = Registry::from_file(source)?;
        registry.extend(extra.methods)?;
    }
    Ok(())
}

/// Derives requirements from situation and usage files and matches them
/// against `registry`.
pub fn select(
    situation_path: &Path,
    usage_path: Option<&Path>,
    registry: &Registry,
    options: DeriveOptions,
) -> Result<(MethodRequirements, SelectionReport), PipelineError> {
    let situation = load_situation(situation_path)?.validate()?;
    let usage = load_usage(usage_path)?;
    let reqs = derive_requirements(&situation, &usage, options)?;
    let report = match_methods(&reqs, registry);
    Ok((reqs, report))
}

struct Selected {
    reqs: MethodRequirements,
    report: SelectionReport,
    iterations: Vec<Iteration>,
    weighted: Option<WeightedChoice>,
    registry: Registry,
    failure: Option<(i32, String)>,
}

fn iteration(
    action: Option<FlashbackAction>,
    registry: &Registry,
    report: &SelectionReport,
) -> Iteration {
    Iteration {
        action,
        registry_snapshot: registry.snapshot_id(),
        expressed: report.expressed(),
        candidates: report.candidates.clone(),
    }
}

fn select_with_flashbacks(
    plan: &RunPlan,
    derived: &MethodRequirements,
    mut registry: Registry,
) -> Result<Selected, PipelineError> {
    let mut reqs = derived.clone();

    if plan.strategy == StrategyPlan::Experience {
        if let Some(store) = ExperienceStore::resolve(plan.experience_path.as_deref()) {
            let base = store.load()?;
            if let Some(hit) = select_by_experience(&reqs, &base).filter(|m| registry.contains(m)) {
                let mut report = match_methods(&reqs, &registry);
                report.chosen = Some(hit);
                report.strategy_used = Strategy::Experience;
                return Ok(Selected {
                    iterations: vec![iteration(None, &registry, &report)],
                    reqs,
                    report,
                    weighted: None,
                    registry,
                    failure: None,
                });
            }
        }
    }

    let mut report = match_methods(&reqs, &registry);
    let mut iterations = vec![iteration(None, &registry, &report)];
    let mut policy = plan.flashback_policy.iter();
    while report.candidates.is_empty() {
        let Some(action) = policy.next() else {
            return Ok(Selected {
                reqs,
                report,
                iterations,
                weighted: None,
                registry,
                failure: Some((EXIT_NO_METHOD, "no method meets the requirements".into())),
            });
        };
        match action {
            FlashbackAction::RelaxRequirement(attr) => attr.relax(&mut reqs),
            FlashbackAction::ExtendRegistry(source) => extend_registry(&mut registry, source)?,
        }
        report = match_methods(&reqs, &registry);
        iterations.push(iteration(Some(action.clone()), &registry, &report));
    }

    let mut weighted = None;
    let mut failure = None;
    if report.candidates.len() > 1 {
        match &plan.strategy {
            StrategyPlan::Weighted(path) => {
                let weights = load_weights(path)?;
                match select_by_weighting(&report, &registry, &weights) {
                    Ok(choice) => {
                        report.chosen = Some(choice.chosen.clone());
                        report.strategy_used = Strategy::Weighted;
                        weighted = Some(choice);
                    }
                    Err(e @ RegistryError::TieNotResolvable(_)) => {
                        failure = Some((EXIT_TIE, e.to_string()))
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            _ => {
                failure = Some((
                    EXIT_TIE,
                    format!(
                        "{} candidates and no weighting to choose among them",
                        report.candidates.len()
                    ),
                ))
            }
        }
    }
    Ok(Selected {
        reqs,
        report,
        iterations,
        weighted,
        registry,
        failure,
    })
}

/// Runs the whole flow and writes `report.json` and `matrix.csv` into the
/// output directory. Selection and validation failures still produce a
/// report, with a nonzero `exit_code`; unreadable or invalid inputs are
/// errors.
pub fn run(plan: &RunPlan) -> Result<RunReport, PipelineError> {
    let report = execute(plan)?;
    write_outputs(&report, &plan.output_dir)?;
    Ok(report)
}

/// [`run`] without writing anything.
pub fn execute(plan: &RunPlan) -> Result<RunReport, PipelineError> {
    let situation: DecisionSituation = load_situation(&plan.situation_path)?.validate()?;
    let usage = load_usage(plan.usage_path.as_deref())?;
    let derived = derive_requirements(&situation, &usage, plan.derive)?;
    let registry = load_registry(&plan.registry_source)?;
    let config = load_method_config(plan.method_config_path.as_deref())?;

    let selected = select_with_flashbacks(plan, &derived, registry)?;
    let mut out = RunReport {
        title: situation.title.clone(),
        derived_requirements: derived,
        final_requirements: selected.reqs,
        selection_report: selected.report,
        iterations: selected.iterations,
        weighted_choice: selected.weighted,
        result: None,
        ranking: None,
        flows: None,
        validation_verdict: Verdict::Ok,
        exit_code: EXIT_OK,
        registry: selected.registry,
    };
    if let Some((code, reason)) = selected.failure {
        out.validation_verdict = Verdict::Flashback {
            step: ProcessStep::SelectMethod,
            reason,
        };
        out.exit_code = code;
        return Ok(out);
    }
    let chosen = out
        .selection_report
        .chosen
        .clone()
        .expect("a successful selection chooses");

    match apply_method(&situation, &chosen, &config) {
        Ok(app) => {
            out.validation_verdict =
                validate_result(&app.result, &situation, &out.final_requirements);
            out.result = Some(app.result);
            out.ranking = app.ranking;
            out.flows = app.flows;
        }
        Err(e) => {
            out.validation_verdict = Verdict::Flashback {
                step: ProcessStep::ApplyMethod,
                reason: e.to_string(),
            };
        }
    }
    if !out.validation_verdict.is_ok() {
        out.exit_code = EXIT_INVALID_RESULT;
        return Ok(out);
    }

    if plan.record_experience && out.selection_report.strategy_used != Strategy::Experience {
        if let Some(store) = ExperienceStore::resolve(plan.experience_path.as_deref()) {
            store.append(&out.final_requirements, &chosen, &out.registry)?;
        }
    }
    Ok(out)
}

/// Writes `report.json` and `matrix.csv`.
pub fn write_outputs(report: &RunReport, dir: &Path) -> Result<(), PipelineError> {
    let output = |path: PathBuf| move |source| PipelineError::Output { path, source };
    std::fs::create_dir_all(dir).map_err(output(dir.to_path_buf()))?;
    let mut json = serde_json::to_string_pretty(report).expect("reports always serialize");
    json.push('\n');
    let report_path = dir.join("report.json");
    std::fs::write(&report_path, json).map_err(output(report_path.clone()))?;
    let matrix_path = dir.join("matrix.csv");
    std::fs::write(
        &matrix_path,
        emit_matrix(&report.selection_report, MatrixLayout::Expressed),
    )
    .map_err(output(matrix_path.clone()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flashback_syntax() {
        assert_eq!(
            "relax:tool".parse::<FlashbackAction>().unwrap(),
            FlashbackAction::RelaxRequirement(Attribute::Tool)
        );
        assert_eq!(
            "extend:builtin:fuzzy".parse::<FlashbackAction>().unwrap(),
            FlashbackAction::ExtendRegistry(BUILTIN_FUZZY.into())
        );
        assert!("relax:colour".parse::<FlashbackAction>().is_err());
        assert!("drop:tool".parse::<FlashbackAction>().is_err());
        let a = FlashbackAction::RelaxRequirement(Attribute::DataType);
        assert_eq!(a.to_string().parse::<FlashbackAction>().unwrap(), a);
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use mcdm_engine::methods::{apply_method, validate_result};
use mcdm_engine::model::{classify_typology, screen_dm_point, DmPointScreen, GuidanceForm};
use mcdm_engine::pipeline::{
    self, emit_matrix, load_method_config, load_situation, load_usage, load_weights,
    FlashbackAction, MatrixLayout, RegistrySource, RunPlan, RunReport, StrategyPlan, BUILTIN_FUZZY,
    EXIT_INPUT, EXIT_INVALID_RESULT, EXIT_NO_METHOD, EXIT_TIE,
};
use mcdm_engine::registry::{
    fuzzy_interface, select_by_experience, select_by_weighting, ExperienceStore, MethodId,
    Registry, RegistryError, Strategy,
};
use mcdm_engine::requirements::{derive_requirements, CountThresholds, DeriveOptions};

#[derive(Parser)]
#[command(
    name = "mcdm",
    version,
    about = "Select and apply multicriteria decision methods"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Screen a process step as a decision point and classify its typology.
    Screen(ScreenArgs),
    /// Validate a situation and print it with normalized weights.
    Describe { situation: PathBuf },
    /// Derive method requirements from a situation.
    Derive(DeriveArgs),
    /// Match requirements against the registry and print the matrix.
    Select(SelectArgs),
    /// Run one method on a situation.
    Apply(ApplyArgs),
    /// Run the whole flow and write report.json and matrix.csv.
    Run(RunArgs),
    /// Print the matrix stored in a report.
    Matrix {
        report: PathBuf,
        #[arg(long)]
        full_grid: bool,
    },
    /// Inspect or extend the experience store.
    #[command(subcommand)]
    Experience(ExperienceCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Guidance {
    Linear,
    Tree,
}

#[derive(Args)]
struct ScreenArgs {
    #[arg(long, value_enum, default_value = "tree")]
    guidance: Guidance,
    /// The guidance gives arguments for the alternatives.
    #[arg(long)]
    arguments: bool,
    /// The guidance offers a way to prioritize the alternatives.
    #[arg(long)]
    prioritization: bool,
    #[arg(long)]
    criteria: Option<u32>,
    #[arg(long)]
    decision_makers: Option<u32>,
}

#[derive(Args)]
struct DeriveArgs {
    situation: PathBuf,
    #[arg(long)]
    usage: Option<PathBuf>,
    /// Keep the measure-scale requirement when a qualitative criterion is present.
    #[arg(long)]
    retain_measure_scale: bool,
    #[arg(long, default_value_t = CountThresholds::default().small_max)]
    small_max: u32,
    #[arg(long, default_value_t = CountThresholds::default().medium_max)]
    medium_max: u32,
}

impl DeriveArgs {
    fn options(&self) -> DeriveOptions {
        DeriveOptions {
            thresholds: CountThresholds {
                small_max: self.small_max,
                medium_max: self.medium_max,
            },
            retain_measure_scale: self.retain_measure_scale,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum StrategyArg {
    Search,
    Weighted,
    Experience,
}

#[derive(Args)]
struct SelectionArgs {
    /// Registry file; the four crisp families by default.
    #[arg(long)]
    registry: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "search")]
    strategy: StrategyArg,
    /// Attribute weights for the weighted strategy.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Experience store; defaults to MCDM_EXPERIENCE_PATH.
    #[arg(long)]
    experience: Option<PathBuf>,
}

impl SelectionArgs {
    fn registry(&self) -> anyhow::Result<Registry> {
        let source = self
            .registry
            .clone()
            .map_or(RegistrySource::Builtin, RegistrySource::File);
        Ok(pipeline::load_registry(&source)?)
    }

    fn strategy(&self) -> anyhow::Result<StrategyPlan> {
        Ok(match self.strategy {
            StrategyArg::Search => StrategyPlan::Search,
            StrategyArg::Experience => StrategyPlan::Experience,
            StrategyArg::Weighted => StrategyPlan::Weighted(
                self.weights
                    .clone()
                    .ok_or_else(|| anyhow!("--strategy weighted needs --weights"))?,
            ),
        })
    }
}

#[derive(Args)]
struct SelectArgs {
    #[command(flatten)]
    derive: DeriveArgs,
    #[command(flatten)]
    selection: SelectionArgs,
    /// Registry file added before matching, or builtin:fuzzy.
    #[arg(long)]
    extend: Vec<String>,
    #[arg(long)]
    full_grid: bool,
}

#[derive(Args)]
struct ApplyArgs {
    situation: PathBuf,
    #[arg(long)]
    method: String,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    derive: DeriveArgs,
    #[command(flatten)]
    selection: SelectionArgs,
    /// relax:<attribute> or extend:<registry file | builtin:fuzzy>; repeatable, applied in order.
    #[arg(long, value_parser = clap::value_parser!(FlashbackAction))]
    flashback: Vec<FlashbackAction>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, short)]
    out: PathBuf,
    /// Record a successful decision in the experience store.
    #[arg(long)]
    record: bool,
}

#[derive(Subcommand)]
enum ExperienceCommand {
    List {
        #[arg(long)]
        store: Option<PathBuf>,
    },
    Record {
        situation: PathBuf,
        #[arg(long)]
        usage: Option<PathBuf>,
        #[arg(long)]
        method: String,
        #[arg(long)]
        store: Option<PathBuf>,
        #[arg(long)]
        registry: Option<PathBuf>,
    },
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn screen(args: &ScreenArgs) -> anyhow::Result<u8> {
    let verdict = screen_dm_point(DmPointScreen {
        guidance_form: match args.guidance {
            Guidance::Linear => GuidanceForm::Linear,
            Guidance::Tree => GuidanceForm::Tree,
        },
        offers_arguments: args.arguments,
        offers_prioritization: args.prioritization,
    });
    let typology = match (args.criteria, args.decision_makers) {
        (Some(c), Some(d)) => Some(classify_typology(c, d)?),
        (None, None) => None,
        _ => return Err(anyhow!("--criteria and --decision-makers go together")),
    };
    print_json(&serde_json::json!({ "screen": verdict, "typology": typology }));
    Ok(0)
}

fn select(args: &SelectArgs) -> anyhow::Result<u8> {
    let mut registry = args.selection.registry()?;
    for source in &args.extend {
        if source == BUILTIN_FUZZY {
            registry.extend([fuzzy_interface()])?;
        } else {
            registry.extend(Registry::from_file(source)?.methods)?;
        }
    }
    let (reqs, mut report) = pipeline::select(
        &args.derive.situation,
        args.derive.usage.as_deref(),
        &registry,
        args.derive.options(),
    )?;
    let mut code = 0;
    if args.selection.strategy()? == StrategyPlan::Experience {
        if let Some(store) = ExperienceStore::resolve(args.selection.experience.as_deref()) {
            if let Some(hit) =
                select_by_experience(&reqs, &store.load()?).filter(|m| registry.contains(m))
            {
                report.chosen = Some(hit);
                report.strategy_used = Strategy::Experience;
            }
        }
    }
    if report.chosen.is_none() {
        if report.candidates.is_empty() {
            code = EXIT_NO_METHOD;
        } else if let StrategyPlan::Weighted(path) = args.selection.strategy()? {
            match select_by_weighting(&report, &registry, &load_weights(&path)?) {
                Ok(choice) => {
                    report.chosen = Some(choice.chosen);
                    report.strategy_used = Strategy::Weighted;
                }
                Err(RegistryError::TieNotResolvable(_)) => code = EXIT_TIE,
                Err(e) => return Err(e.into()),
            }
        } else {
            code = EXIT_TIE;
        }
    }
    let layout = if args.full_grid {
        MatrixLayout::FullGrid
    } else {
        MatrixLayout::Expressed
    };
    print!("{}", emit_matrix(&report, layout));
    match &report.chosen {
        Some(m) => eprintln!("chosen: {m}"),
        None => eprintln!("no method chosen"),
    }
    Ok(code as u8)
}

fn apply(args: &ApplyArgs) -> anyhow::Result<u8> {
    let situation = load_situation(&args.situation)?.validate()?;
    let config = load_method_config(args.config.as_deref())?;
    match apply_method(&situation, &MethodId::new(args.method.as_str()), &config) {
        Ok(app) => {
            let verdict = validate_result(&app.result, &situation, &Default::default());
            print_json(&serde_json::json!({ "application": app, "verdict": verdict }));
            Ok(if verdict.is_ok() {
                0
            } else {
                EXIT_INVALID_RESULT as u8
            })
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(EXIT_INVALID_RESULT as u8)
        }
    }
}

fn run(args: &RunArgs) -> anyhow::Result<u8> {
    let mut plan = RunPlan::new(&args.derive.situation, &args.out)
        .with_strategy(args.selection.strategy()?)
        .with_derive_options(args.derive.options());
    plan.usage_path = args.derive.usage.clone();
    plan.method_config_path = args.config.clone();
    plan.flashback_policy = args.flashback.clone();
    plan.experience_path = args.selection.experience.clone();
    plan.record_experience = args.record;
    if let Some(path) = &args.selection.registry {
        plan.registry_source = RegistrySource::File(path.clone());
    }
    let report = pipeline::run(&plan)?;
    match report.chosen() {
        Some(m) => eprintln!("chosen: {m}"),
        None => eprintln!("no method chosen"),
    }
    eprintln!("report: {}", args.out.join("report.json").display());
    Ok(report.exit_code as u8)
}

fn matrix(path: &Path, full_grid: bool) -> anyhow::Result<u8> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let report: RunReport =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let layout = if full_grid {
        MatrixLayout::FullGrid
    } else {
        MatrixLayout::Expressed
    };
    print!("{}", emit_matrix(&report.selection_report, layout));
    Ok(0)
}

fn store(path: Option<&Path>) -> anyhow::Result<ExperienceStore> {
    ExperienceStore::resolve(path)
        .ok_or_else(|| anyhow!("no experience store: pass --store or set MCDM_EXPERIENCE_PATH"))
}

fn experience(cmd: &ExperienceCommand) -> anyhow::Result<u8> {
    match cmd {
        ExperienceCommand::List { store: path } => {
            for record in store(path.as_deref())?.load()?.records() {
                println!("{}", serde_json::to_string(record)?);
            }
        }
        ExperienceCommand::Record {
            situation,
            usage,
            method,
            store: path,
            registry,
        } => {
            let situation = load_situation(situation)?;
            let reqs = derive_requirements(
                &situation,
                &load_usage(usage.as_deref())?,
                DeriveOptions::default(),
            )?;
            let registry = match registry {
                Some(p) => Registry::from_file(p)?,
                None => mcdm_engine::registry::builtin_interfaces(),
            };
            let record = store(path.as_deref())?.append(
                &reqs,
                &MethodId::new(method.as_str()),
                &registry,
            )?;
            println!("{}", serde_json::to_string(&record)?);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // usage errors share the input-failure code
            let _ = e.print();
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let outcome = match &cli.command {
        Command::Screen(args) => screen(args),
        Command::Describe { situation } => load_situation(situation)
            .and_then(|s| Ok(s.validate()?))
            .map(|s| {
                print_json(&s);
                0
            })
            .map_err(Into::into),
        Command::Derive(args) => load_situation(&args.situation)
            .and_then(|s| Ok((s, load_usage(args.usage.as_deref())?)))
            .map_err(anyhow::Error::from)
            .and_then(|(s, u)| Ok(derive_requirements(&s, &u, args.options())?))
            .map(|reqs| {
                print_json(&reqs);
                0
            }),
        Command::Select(args) => select(args),
        Command::Apply(args) => apply(args),
        Command::Run(args) => run(args),
        Command::Matrix { report, full_grid } => matrix(report, *full_grid),
        Command::Experience(cmd) => experience(cmd),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}

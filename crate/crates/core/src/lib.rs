//! Multicriteria decision engine for development-process decision points.
//!
//! The crate follows a four-step flow:
//!
//! 1. describe a decision situation ([`model`]): the problem kind, the
//!    alternatives, the criteria family and the performance table;
//! 2. derive the requirements an MC method has to meet ([`requirements`]);
//! 3. select a method family by matching those requirements against method
//!    interfaces ([`registry`]);
//! 4. execute the selected method and validate its result ([`methods`]).
//!
//! [`pipeline`] strings the steps together, including flashbacks to earlier
//! steps when no method matches, and owns the file formats used by the
//! `mcdm` binary.
//!
//! ```no_run
//! use mcdm_engine::pipeline::{self, RunPlan};
//!
//! let plan = RunPlan::new("fixtures/tools/situation.toml", "out/tools")
//!     .with_usage("fixtures/tools/usage.toml")
//!     .with_method_config("fixtures/tools/config.toml");
//! let report = pipeline::run(&plan).unwrap();
//! assert_eq!(report.exit_code, 0);
//! ```

pub mod methods;
pub mod model;
pub mod pipeline;
pub mod registry;
pub mod requirements;

pub use methods::{DecisionResult, Ranking};
pub use model::{Criterion, DecisionSituation, PerformanceValue, ProblemKind};
pub use registry::{MethodId, MethodInterface, Registry, SelectionReport};
pub use requirements::MethodRequirements;

//! Input documents. Every document is TOML with field names taken from the
//! corresponding type.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;

use super::PipelineError;
use crate::methods::MethodConfig;
use crate::model::DecisionSituation;
use crate::registry::AttributeWeights;
use crate::requirements::UsagePreferences;

pub fn read_document<T: DeserializeOwned>(path: &Path) -> Result<T, PipelineError> {
    let text = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    toml::from_str(&text).map_err(|e| PipelineError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn load_situation(path: &Path) -> Result<DecisionSituation, PipelineError> {
    read_document(path)
}

pub fn load_usage(path: Option<&Path>) -> Result<UsagePreferences, PipelineError> {
    path.map_or_else(|| Ok(UsagePreferences::default()), read_document)
}

pub fn load_method_config(path: Option<&Path>) -> Result<MethodConfig, PipelineError> {
    path.map_or_else(|| Ok(MethodConfig::default()), read_document)
}

/// Attribute weights, one `attribute = weight` line per entry.
pub fn load_weights(path: &Path) -> Result<AttributeWeights, PipelineError> {
    read_document(path)
}

/// The three bundled case studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    Tools,
    Risks,
    UseCases,
}

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::Tools, Fixture::Risks, Fixture::UseCases];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Tools => "tools",
            Fixture::Risks => "risks",
            Fixture::UseCases => "use_cases",
        }
    }

    pub fn dir(self) -> PathBuf {
        fixtures_dir().join(self.name())
    }

    pub fn situation(self) -> PathBuf {
        self.dir().join("situation.toml")
    }

    /// Usage preferences, when the case states any.
    pub fn usage(self) -> Option<PathBuf> {
        Some(self.dir().join("usage.toml")).filter(|p| p.exists())
    }

    pub fn config(self) -> PathBuf {
        self.dir().join("config.toml")
    }

    /// Attribute weights for the weighted strategy, when the case has them.
    pub fn weights(self) -> Option<PathBuf> {
        Some(self.dir().join("weights.toml")).filter(|p| p.exists())
    }
}

/// Directory holding the bundled fixtures.
pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Registry file with the fuzzy family, used to extend the crisp registry.
pub fn fuzzy_registry_file() -> PathBuf {
    fixtures_dir().join("registry").join("fuzzy.toml")
}

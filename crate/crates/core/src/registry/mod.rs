//! Method interfaces and method selection.
//!
//! An interface lists the situation characteristics a method family can
//! handle. Requirements are matched against every interface of a
//! [`Registry`]; the resulting 0/1 matrix is a [`SelectionReport`].

mod experience;
mod matching;
mod weighting;

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::model::{AlternativesNature, DataType, ProblemKind};
use crate::requirements::{CountBucket, Easiness, Notation, SkillLevel, WeightingType};

pub use experience::{
    record_experience, select_by_experience, ExperienceBase, ExperienceRecord, ExperienceStore,
    EXPERIENCE_PATH_ENV,
};
pub use matching::{match_methods, Attribute, MatrixRow, SelectionReport, Strategy};
pub use weighting::{select_by_weighting, AttributeWeights, MethodScore, WeightedChoice};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MethodId(String);

impl MethodId {
    pub const MAUT: &'static str = "maut";
    pub const AHP: &'static str = "ahp";
    pub const OUTRANKING: &'static str = "outranking";
    pub const WEIGHTING: &'static str = "weighting";
    pub const FUZZY: &'static str = "fuzzy";

    pub fn new(id: impl Into<String>) -> Self {
        MethodId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for MethodId {
    fn from(s: &str) -> Self {
        MethodId::new(s)
    }
}

impl PartialEq<&str> for MethodId {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

/// An interface cell that is either a concrete value or a wildcard.
/// Wildcards stand for cells whose value depends on the underlying variant
/// of a method family and satisfy every requirement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Wild<T> {
    Any,
    Only(T),
}

impl<T> Wild<T> {
    pub fn admits(&self, pred: impl FnOnce(&T) -> bool) -> bool {
        match self {
            Wild::Any => true,
            Wild::Only(v) => pred(v),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum AnyKeyword {
    Any,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WildRepr<T> {
    Any(AnyKeyword),
    Only(T),
}

impl<T: Serialize> Serialize for Wild<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Wild::Any => AnyKeyword::Any.serialize(serializer),
            Wild::Only(v) => v.serialize(serializer),
        }
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Wild<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(match WildRepr::deserialize(deserializer)? {
            WildRepr::Any(_) => Wild::Any,
            WildRepr::Only(v) => Wild::Only(v),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MethodInterface {
    pub method_id: MethodId,
    pub problems: BTreeSet<ProblemKind>,
    pub count_buckets: Wild<BTreeSet<CountBucket>>,
    pub natures: Wild<BTreeSet<AlternativesNature>>,
    pub incompatibility_support: Wild<bool>,
    pub data_types: Wild<BTreeSet<DataType>>,
    pub measure_scale_support: Wild<bool>,
    pub weighting_types: Wild<BTreeSet<WeightingType>>,
    pub tool_available: Wild<bool>,
    pub notation: Wild<Notation>,
    pub easiness: Easiness,
    pub skill_demand: SkillLevel,
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("method {0} is not in the registry")]
    UnknownMethod(MethodId),
    #[error("method {0} is declared twice")]
    DuplicateMethod(MethodId),
    #[error("method {0} supports no problem kind")]
    NoProblems(MethodId),
    #[error("registry is empty")]
    Empty,
    #[error("cannot read registry file {path}: {reason}")]
    Unreadable { path: String, reason: String },
    #[error("selection has no candidate method")]
    NoCandidates,
    #[error("candidates {} share the same interface on the weighted attributes", join_ids(.0))]
    TieNotResolvable(Vec<MethodId>),
    #[error("attribute {0} is weighted but neither expressed nor a method capability")]
    UnscorableAttribute(Attribute),
    #[error("weight for {0} must be finite and nonnegative")]
    InvalidWeight(Attribute),
    #[error("experience store unreadable: {0}")]
    StoreUnreadable(String),
    #[error("experience store unwritable: {0}")]
    StoreUnwritable(String),
}

fn join_ids(ids: &[MethodId]) -> String {
    ids.iter()
        .map(MethodId::as_str)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    pub methods: Vec<MethodInterface>,
}

impl Registry {
    pub fn new(methods: Vec<MethodInterface>) -> Result<Self, RegistryError> {
        let mut registry = Registry {
            methods: Vec::new(),
        };
        registry.extend(methods)?;
        if registry.methods.is_empty() {
            return Err(RegistryError::Empty);
        }
        Ok(registry)
    }

    /// The four crisp families: MAUT, AHP, outranking and weighting.
    pub fn crisp() -> Self {
        let mut all = builtin_interfaces();
        all.methods.retain(|m| m.method_id != MethodId::FUZZY);
        all
    }

    pub fn lookup(&self, id: &str) -> Option<&MethodInterface> {
        self.methods.iter().find(|m| m.method_id.as_str() == id)
    }

    pub fn contains(&self, id: &MethodId) -> bool {
        self.lookup(id.as_str()).is_some()
    }

    /// Appends interfaces; existing entries are never replaced.
    pub fn extend(
        &mut self,
        methods: impl IntoIterator<Item = MethodInterface>,
    ) -> Result<(), RegistryError> {
        for m in methods {
            if m.problems.is_empty() {
                return Err(RegistryError::NoProblems(m.method_id));
            }
            if self.contains(&m.method_id) {
                return Err(RegistryError::DuplicateMethod(m.method_id));
            }
            self.methods.push(m);
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self, RegistryError> {
        let parsed: Registry = toml::from_str(text).map_err(|e| RegistryError::Unreadable {
            path: "<inline>".into(),
            reason: e.to_string(),
        })?;
        Registry::new(parsed.methods)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, RegistryError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| RegistryError::Unreadable {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Registry::from_toml_str(&text).map_err(|e| match e {
            RegistryError::Unreadable { reason, .. } => RegistryError::Unreadable {
                path: path.display().to_string(),
                reason,
            },
            other => other,
        })
    }

    /// Short content hash identifying this exact registry encoding.
    pub fn snapshot_id(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("registry always serializes");
        let digest = Sha256::digest(&canonical);
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// The five method families with their interfaces as published.
pub fn builtin_interfaces() -> Registry {
    use AlternativesNature::Discrete;
    use CountBucket::*;
    use DataType::*;
    use ProblemKind::*;
    use WeightingType::*;

    let all_counts = Wild::Only(BTreeSet::from([Small, Medium, Great]));
    let discrete = Wild::Only(BTreeSet::from([Discrete]));
    let crisp_types = Wild::Only(BTreeSet::from([Quantitative, Qualitative]));

    let methods = vec![
        MethodInterface {
            method_id: MethodId::new(MethodId::MAUT),
            problems: BTreeSet::from([Choice, Ranking]),
            count_buckets: all_counts.clone(),
            natures: discrete.clone(),
            incompatibility_support: Wild::Only(true),
            data_types: crisp_types.clone(),
            measure_scale_support: Wild::Only(true),
            weighting_types: Wild::Only(BTreeSet::from([Simple])),
            tool_available: Wild::Only(false),
            notation: Wild::Only(Notation::UtilityFunction),
            easiness: Easiness::Difficult,
            skill_demand: SkillLevel::Strong,
        },
        MethodInterface {
            method_id: MethodId::new(MethodId::AHP),
            problems: BTreeSet::from([Choice, Ranking]),
            count_buckets: Wild::Only(BTreeSet::from([Small])),
            natures: discrete.clone(),
            incompatibility_support: Wild::Only(false),
            data_types: crisp_types.clone(),
            measure_scale_support: Wild::Only(false),
            weighting_types: Wild::Only(BTreeSet::from([Interdependent])),
            tool_available: Wild::Only(true),
            notation: Wild::Only(Notation::WeightedSum),
            easiness: Easiness::Easy,
            skill_demand: SkillLevel::Medium,
        },
        MethodInterface {
            method_id: MethodId::new(MethodId::OUTRANKING),
            problems: BTreeSet::from([Choice, Ranking, Sorting]),
            count_buckets: all_counts.clone(),
            natures: discrete.clone(),
            incompatibility_support: Wild::Only(true),
            data_types: crisp_types,
            measure_scale_support: Wild::Only(true),
            weighting_types: Wild::Only(BTreeSet::from([Interdependent])),
            tool_available: Wild::Only(true),
            notation: Wild::Only(Notation::Textual),
            easiness: Easiness::Medium,
            skill_demand: SkillLevel::Strong,
        },
        MethodInterface {
            method_id: MethodId::new(MethodId::WEIGHTING),
            problems: BTreeSet::from([Choice, Ranking]),
            count_buckets: all_counts,
            natures: discrete,
            incompatibility_support: Wild::Only(false),
            data_types: Wild::Only(BTreeSet::from([Quantitative])),
            measure_scale_support: Wild::Only(false),
            weighting_types: Wild::Only(BTreeSet::from([Simple])),
            tool_available: Wild::Only(true),
            notation: Wild::Only(Notation::WeightedSum),
            easiness: Easiness::Easy,
            skill_demand: SkillLevel::Weak,
        },
        fuzzy_interface(),
    ];
    Registry { methods }
}

/// The fuzzy family. Its characteristics depend on the underlying crisp
/// method, so most cells are wildcards.
pub fn fuzzy_interface() -> MethodInterface {
    use ProblemKind::*;
    MethodInterface {
        method_id: MethodId::new(MethodId::FUZZY),
        problems: BTreeSet::from([Choice, Ranking, Sorting]),
        count_buckets: Wild::Any,
        natures: Wild::Any,
        incompatibility_support: Wild::Any,
        data_types: Wild::Any,
        measure_scale_support: Wild::Any,
        weighting_types: Wild::Any,
        tool_available: Wild::Any,
        notation: Wild::Any,
        easiness: Easiness::Difficult,
        skill_demand: SkillLevel::Strong,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_cells() {
        let reg = builtin_interfaces();
        assert_eq!(reg.methods.len(), 5);
        assert_eq!(
            reg.lookup("ahp").unwrap().count_buckets,
            Wild::Only(BTreeSet::from([CountBucket::Small]))
        );
        assert_eq!(
            reg.lookup("weighting").unwrap().data_types,
            Wild::Only(BTreeSet::from([DataType::Quantitative]))
        );
        assert_eq!(
            reg.lookup("outranking").unwrap().problems,
            BTreeSet::from([
                ProblemKind::Choice,
                ProblemKind::Ranking,
                ProblemKind::Sorting
            ])
        );
        assert_eq!(
            reg.lookup("maut").unwrap().tool_available,
            Wild::Only(false)
        );
        let easiness: Vec<_> = reg.methods.iter().map(|m| m.easiness).collect();
        assert_eq!(
            easiness,
            [
                Easiness::Difficult,
                Easiness::Easy,
                Easiness::Medium,
                Easiness::Easy,
                Easiness::Difficult
            ]
        );
        let skills: Vec<_> = reg.methods.iter().map(|m| m.skill_demand).collect();
        assert_eq!(
            skills,
            [
                SkillLevel::Strong,
                SkillLevel::Medium,
                SkillLevel::Strong,
                SkillLevel::Weak,
                SkillLevel::Strong
            ]
        );
        let fuzzy = reg.lookup("fuzzy").unwrap();
        assert_eq!(fuzzy.data_types, Wild::Any);
        assert_eq!(fuzzy.tool_available, Wild::Any);
    }

    #[test]
    fn crisp_registry_drops_fuzzy() {
        let ids: Vec<_> = Registry::crisp()
            .methods
            .into_iter()
            .map(|m| m.method_id)
            .collect();
        assert_eq!(ids, ["maut", "ahp", "outranking", "weighting"]);
    }

    #[test]
    fn registry_file_round_trip() {
        let reg = builtin_interfaces();
        let text = toml::to_string(&reg).unwrap();
        assert!(text.contains("count_buckets = \"any\""));
        let back = Registry::from_toml_str(&text).unwrap();
        assert_eq!(back, reg);
        assert_eq!(back.snapshot_id(), reg.snapshot_id());
        assert_ne!(Registry::crisp().snapshot_id(), reg.snapshot_id());
    }

    #[test]
    fn duplicates_and_empties_rejected() {
        let mut reg = Registry::crisp();
        assert!(matches!(
            reg.extend([fuzzy_interface(), fuzzy_interface()]),
            Err(RegistryError::DuplicateMethod(_))
        ));
        let mut no_problems = fuzzy_interface();
        no_problems.method_id = MethodId::new("empty");
        no_problems.problems.clear();
        assert!(matches!(
            Registry::new(vec![no_problems]),
            Err(RegistryError::NoProblems(_))
        ));
        assert!(matches!(Registry::new(vec![]), Err(RegistryError::Empty)));
    }
}

//! Requirements for an MC method, derived from a decision situation by
//! problem investigation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    AlternativesNature, DataType, DecisionSituation, ModelError, ProblemKind, WeightingOrigin,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountBucket {
    Small,
    Medium,
    Great,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountThresholds {
    pub small_max: u32,
    pub medium_max: u32,
}

impl Default for CountThresholds {
    fn default() -> Self {
        Self {
            small_max: 7,
            medium_max: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightingType {
    Simple,
    Interdependent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Notation {
    UtilityFunction,
    WeightedSum,
    Textual,
}

/// Ordered from easiest to hardest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Easiness {
    Easy,
    Medium,
    Difficult,
}

/// Ordered from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkillLevel {
    Weak,
    Medium,
    Strong,
}

/// Operator-supplied expectations about using the method. Every field may be
/// left unexpressed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UsagePreferences {
    #[serde(default)]
    pub tool_required: Option<bool>,
    #[serde(default)]
    pub notation_preference: Option<Notation>,
    #[serde(default)]
    pub easiness_required: Option<Easiness>,
    #[serde(default)]
    pub skills_available: Option<SkillLevel>,
}

impl UsagePreferences {
    pub fn is_empty(&self) -> bool {
        *self == UsagePreferences::default()
    }
}

/// The requirement document matched against method interfaces. `None` means
/// "not expressed" and imposes no constraint.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MethodRequirements {
    #[serde(default)]
    pub problem: Option<ProblemKind>,
    #[serde(default)]
    pub count_bucket: Option<CountBucket>,
    #[serde(default)]
    pub nature: Option<AlternativesNature>,
    #[serde(default)]
    pub incompatibility: Option<bool>,
    #[serde(default)]
    pub data_type_required: Option<BTreeSet<DataType>>,
    #[serde(default)]
    pub measure_scale_needed: Option<bool>,
    #[serde(default)]
    pub weighting_type: Option<WeightingType>,
    #[serde(default)]
    pub usage: UsagePreferences,
}

impl MethodRequirements {
    pub fn is_unexpressed(&self) -> bool {
        self.problem.is_none()
            && self.count_bucket.is_none()
            && self.nature.is_none()
            && self.incompatibility.is_none()
            && self.data_type_required.is_none()
            && self.measure_scale_needed.is_none()
            && self.weighting_type.is_none()
            && self.usage.is_empty()
    }

    /// Canonical byte form: field order is fixed by the struct and sets are
    /// ordered, so equal documents produce equal fingerprints.
    pub fn fingerprint(&self) -> String {
        serde_json::to_string(self).expect("requirements always serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RequirementsError {
    #[error("thresholds must satisfy 0 < small_max < medium_max, got {small_max} / {medium_max}")]
    BadThresholds { small_max: u32, medium_max: u32 },
    #[error("alternative count {0} is below the two-alternative minimum")]
    TooFewAlternatives(usize),
    #[error("derivation produced no expressed requirement")]
    NothingExpressed,
    #[error(transparent)]
    Situation(#[from] ModelError),
}

pub fn bucketize_count(
    n: usize,
    thresholds: CountThresholds,
) -> Result<CountBucket, RequirementsError> {
    let CountThresholds {
        small_max,
        medium_max,
    } = thresholds;
    if small_max == 0 || small_max >= medium_max {
        return Err(RequirementsError::BadThresholds {
            small_max,
            medium_max,
        });
    }
    if n < 2 {
        return Err(RequirementsError::TooFewAlternatives(n));
    }
    Ok(if n <= small_max as usize {
        CountBucket::Small
    } else if n <= medium_max as usize {
        CountBucket::Medium
    } else {
        CountBucket::Great
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DeriveOptions {
    pub thresholds: CountThresholds,
    /// Also retain the criteria measure scale. Off by default: the bundled
    /// case studies never express it.
    pub retain_measure_scale: bool,
}

/// Runs the investigation operations on a situation (validated here if it
/// was not already).
pub fn derive_requirements(
    situation: &DecisionSituation,
    usage: &UsagePreferences,
    options: DeriveOptions,
) -> Result<MethodRequirements, RequirementsError> {
    let situation = situation.validate()?;
    let data_types: BTreeSet<DataType> = situation.criteria.iter().map(|c| c.data_type).collect();
    let measure_scale_needed = options.retain_measure_scale.then(|| {
        situation
            .criteria
            .iter()
            .any(|c| c.data_type == DataType::Qualitative && c.scale.is_some())
    });
    let reqs = MethodRequirements {
        problem: Some(situation.problem),
        count_bucket: Some(bucketize_count(
            situation.alternatives.len(),
            options.thresholds,
        )?),
        nature: Some(situation.alternatives_nature),
        incompatibility: situation.incompatibility_present,
        data_type_required: Some(data_types),
        // a scale-free situation expresses nothing about scales
        measure_scale_needed: measure_scale_needed.filter(|&needed| needed),
        weighting_type: situation.weighting.map(|origin| match origin {
            WeightingOrigin::Direct => WeightingType::Simple,
            WeightingOrigin::Pairwise => WeightingType::Interdependent,
        }),
        usage: usage.clone(),
    };
    if reqs.is_unexpressed() {
        return Err(RequirementsError::NothingExpressed);
    }
    Ok(reqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn default_buckets() {
        let t = CountThresholds::default();
        assert_eq!(bucketize_count(10, t).unwrap(), CountBucket::Medium);
        assert_eq!(bucketize_count(25, t).unwrap(), CountBucket::Great);
        assert_eq!(bucketize_count(5, t).unwrap(), CountBucket::Small);
        assert_eq!(bucketize_count(7, t).unwrap(), CountBucket::Small);
        assert_eq!(bucketize_count(20, t).unwrap(), CountBucket::Medium);
        assert_eq!(bucketize_count(21, t).unwrap(), CountBucket::Great);
    }

    #[test]
    fn bad_thresholds() {
        for (s, m) in [(0, 5), (5, 5), (9, 3)] {
            let t = CountThresholds {
                small_max: s,
                medium_max: m,
            };
            assert!(matches!(
                bucketize_count(4, t),
                Err(RequirementsError::BadThresholds { .. })
            ));
        }
    }

    #[test]
    fn fingerprint_ignores_set_insertion_order() {
        let a = MethodRequirements {
            data_type_required: Some([DataType::Fuzzy, DataType::Quantitative].into()),
            ..Default::default()
        };
        let b = MethodRequirements {
            data_type_required: Some([DataType::Quantitative, DataType::Fuzzy].into()),
            ..Default::default()
        };
        assert_eq!(a.fingerprint(), b.fingerprint());
    }

    proptest! {
        #[test]
        fn bucket_is_monotone(n in 2usize..200, extra in 0usize..50, s in 1u32..30, gap in 1u32..30) {
            let t = CountThresholds { small_max: s, medium_max: s + gap };
            prop_assert!(bucketize_count(n, t).unwrap() <= bucketize_count(n + extra, t).unwrap());
        }
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{MethodId, MethodInterface, Registry};
use crate::requirements::{MethodRequirements, WeightingType};

/// Requirement attributes that produce a matrix row, in canonical order.
/// Notation preference has no row: it is reported, never matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attribute {
    Problem,
    Count,
    Nature,
    Incompatibility,
    DataType,
    MeasureScale,
    Weighting,
    Tool,
    Easiness,
    Skills,
}

impl Attribute {
    pub const ALL: [Attribute; 10] = [
        Attribute::Problem,
        Attribute::Count,
        Attribute::Nature,
        Attribute::Incompatibility,
        Attribute::DataType,
        Attribute::MeasureScale,
        Attribute::Weighting,
        Attribute::Tool,
        Attribute::Easiness,
        Attribute::Skills,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Attribute::Problem => "problem",
            Attribute::Count => "count",
            Attribute::Nature => "nature",
            Attribute::Incompatibility => "incompatibility",
            Attribute::DataType => "data_type",
            Attribute::MeasureScale => "measure_scale",
            Attribute::Weighting => "weighting",
            Attribute::Tool => "tool",
            Attribute::Easiness => "easiness",
            Attribute::Skills => "skills",
        }
    }

    pub fn parse(name: &str) -> Option<Attribute> {
        Attribute::ALL.into_iter().find(|a| a.name() == name)
    }

    /// Whether `reqs` expresses this attribute.
    pub fn is_expressed(self, reqs: &MethodRequirements) -> bool {
        satisfies(self, reqs, &super::fuzzy_interface()).is_some()
    }

    /// Drops this attribute from `reqs`, leaving it unexpressed.
    pub fn relax(self, reqs: &mut MethodRequirements) {
        match self {
            Attribute::Problem => reqs.problem = None,
            Attribute::Count => reqs.count_bucket = None,
            Attribute::Nature => reqs.nature = None,
            Attribute::Incompatibility => reqs.incompatibility = None,
            Attribute::DataType => reqs.data_type_required = None,
            Attribute::MeasureScale => reqs.measure_scale_needed = None,
            Attribute::Weighting => reqs.weighting_type = None,
            Attribute::Tool => reqs.usage.tool_required = None,
            Attribute::Easiness => reqs.usage.easiness_required = None,
            Attribute::Skills => reqs.usage.skills_available = None,
        }
    }

    /// The attribute read as a plain capability of the interface, for the
    /// boolean attributes that can be scored without a requirement value.
    pub fn capability(self, iface: &MethodInterface) -> Option<bool> {
        let flag = match self {
            Attribute::Incompatibility => &iface.incompatibility_support,
            Attribute::MeasureScale => &iface.measure_scale_support,
            Attribute::Tool => &iface.tool_available,
            _ => return None,
        };
        Some(flag.admits(|&b| b))
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `None` when `reqs` leaves the attribute unexpressed.
pub(crate) fn satisfies(
    attr: Attribute,
    reqs: &MethodRequirements,
    iface: &MethodInterface,
) -> Option<bool> {
    let cell = match attr {
        Attribute::Problem => iface.problems.contains(&reqs.problem?),
        Attribute::Count => {
            let bucket = reqs.count_bucket?;
            iface.count_buckets.admits(|set| set.contains(&bucket))
        }
        Attribute::Nature => {
            let nature = reqs.nature?;
            iface.natures.admits(|set| set.contains(&nature))
        }
        Attribute::Incompatibility => {
            let present = reqs.incompatibility?;
            !present || iface.incompatibility_support.admits(|&b| b)
        }
        Attribute::DataType => {
            let needed = reqs.data_type_required.as_ref()?;
            iface.data_types.admits(|set| needed.is_subset(set))
        }
        Attribute::MeasureScale => {
            let needed = reqs.measure_scale_needed?;
            !needed || iface.measure_scale_support.admits(|&b| b)
        }
        Attribute::Weighting => match reqs.weighting_type? {
            // interdependent-capable methods accept simple weights too
            WeightingType::Simple => iface.weighting_types.admits(|set| !set.is_empty()),
            WeightingType::Interdependent => iface
                .weighting_types
                .admits(|set| set.contains(&WeightingType::Interdependent)),
        },
        Attribute::Tool => {
            let required = reqs.usage.tool_required?;
            !required || iface.tool_available.admits(|&b| b)
        }
        Attribute::Easiness => iface.easiness <= reqs.usage.easiness_required?,
        Attribute::Skills => iface.skill_demand <= reqs.usage.skills_available?,
    };
    Some(cell)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Search,
    Weighted,
    Experience,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRow {
    pub attribute: Attribute,
    /// One cell per method, in registry order.
    pub cells: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionReport {
    pub methods: Vec<MethodId>,
    /// Expressed attributes only, in canonical order.
    pub rows: Vec<MatrixRow>,
    pub candidates: Vec<MethodId>,
    pub chosen: Option<MethodId>,
    pub strategy_used: Strategy,
}

impl SelectionReport {
    pub fn row(&self, attr: Attribute) -> Option<&MatrixRow> {
        self.rows.iter().find(|r| r.attribute == attr)
    }

    pub fn cell(&self, attr: Attribute, method: &str) -> Option<bool> {
        let col = self.methods.iter().position(|m| m.as_str() == method)?;
        Some(self.row(attr)?.cells[col])
    }

    pub fn is_candidate(&self, method: &MethodId) -> bool {
        self.candidates.contains(method)
    }

    pub fn expressed(&self) -> Vec<Attribute> {
        self.rows.iter().map(|r| r.attribute).collect()
    }
}

/// Builds the 0/1 matrix of expressed requirements against every method. A
/// method is a candidate when its column is all ones; a lone candidate is
/// chosen outright.
pub fn match_methods(reqs: &MethodRequirements, registry: &Registry) -> SelectionReport {
    let rows: Vec<MatrixRow> = Attribute::ALL
        .into_iter()
        .filter_map(|attr| {
            let cells: Option<Vec<bool>> = registry
                .methods
                .iter()
                .map(|m| satisfies(attr, reqs, m))
                .collect();
            cells.map(|cells| MatrixRow {
                attribute: attr,
                cells,
            })
        })
        .collect();
    let candidates: Vec<MethodId> = registry
        .methods
        .iter()
        .enumerate()
        .filter(|(col, _)| rows.iter().all(|r| r.cells[*col]))
        .map(|(_, m)| m.method_id.clone())
        .collect();
    let chosen = match candidates.as_slice() {
        [only] => Some(only.clone()),
        _ => None,
    };
    SelectionReport {
        methods: registry
            .methods
            .iter()
            .map(|m| m.method_id.clone())
            .collect(),
        rows,
        candidates,
        chosen,
        strategy_used: Strategy::Search,
    }
}

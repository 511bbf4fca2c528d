//! Analytic hierarchy process: priorities from reciprocal pairwise
//! comparison matrices, Saaty's consistency ratio, and hierarchical
//! composition into a global ranking.

use serde::{Deserialize, Serialize};

use super::{MethodError, Ranking};

/// Largest matrix accepted by [`ahp_priorities`].
pub const MAX_PRIORITY_DIM: usize = 15;
/// Largest matrix with a tabulated random index.
pub const MAX_CONSISTENCY_DIM: usize = 10;
/// Largest alternative set compared pairwise in [`ahp_rank`].
pub const MAX_ALTERNATIVES: usize = 9;

const RECIPROCAL_TOLERANCE: f64 = 1e-9;
const POWER_RESIDUAL: f64 = 1e-10;
const POWER_MAX_ITERATIONS: usize = 10_000;

/// Saaty's random consistency index for n = 1..=10.
const RANDOM_INDEX: [f64; 11] = [
    0.0, 0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49,
];

pub fn random_index(n: usize) -> Option<f64> {
    RANDOM_INDEX.get(n).copied()
}

/// Square, positive, reciprocal comparison matrix with a unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl PairwiseMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, MethodError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(MethodError::NotSquare);
        }
        let entries: Vec<f64> = rows.into_iter().flatten().collect();
        for i in 0..n {
            for j in 0..n {
                let a = entries[i * n + j];
                if !(a.is_finite() && a > 0.0) {
                    return Err(MethodError::NotPositive { row: i, col: j });
                }
            }
        }
        for i in 0..n {
            if (entries[i * n + i] - 1.0).abs() > RECIPROCAL_TOLERANCE {
                return Err(MethodError::NotReciprocal { row: i, col: i });
            }
            for j in i + 1..n {
                if (entries[j * n + i] - 1.0 / entries[i * n + j]).abs() > RECIPROCAL_TOLERANCE {
                    return Err(MethodError::NotReciprocal { row: i, col: j });
                }
            }
        }
        Ok(Self { n, entries })
    }

    /// The perfectly consistent matrix `a_ij = w_i / w_j`.
    pub fn from_weights(weights: &[f64]) -> Result<Self, MethodError> {
        Self::new(
            weights
                .iter()
                .map(|wi| weights.iter().map(|wj| wi / wj).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }
}

impl Serialize for PairwiseMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PairwiseMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(deserializer)?;
        PairwiseMatrix::new(rows).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriorityMode {
    #[default]
    GeometricMean,
    Eigenvector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Priorities {
    /// Sums to one.
    pub weights: Vec<f64>,
    pub lambda_max: f64,
}

fn normalize(v: &mut [f64]) {
    let sum: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= sum);
}

fn lambda_max(matrix: &PairwiseMatrix, weights: &[f64]) -> f64 {
    let aw = matrix.mul_vec(weights);
    aw.iter().zip(weights).map(|(a, w)| a / w).sum::<f64>() / weights.len() as f64
}

/// Priority vector without the dimension guard; used where the matrix size
/// is already bounded.
pub(crate) fn priorities(matrix: &PairwiseMatrix, mode: PriorityMode) -> Priorities {
    let n = matrix.n;
    let weights = match mode {
        PriorityMode::GeometricMean => {
            let mut w: Vec<f64> = matrix
                .entries
                .chunks(n)
                .map(|row| (row.iter().map(|a| a.ln()).sum::<f64>() / n as f64).exp())
                .collect();
            normalize(&mut w);
            w
        }
        PriorityMode::Eigenvector => {
            let mut w = vec![1.0 / n as f64; n];
            for _ in 0..POWER_MAX_ITERATIONS {
                let mut next = matrix.mul_vec(&w);
                normalize(&mut next);
                let residual: f64 = next.iter().zip(&w).map(|(a, b)| (a - b).abs()).sum();
                w = next;
                if residual < POWER_RESIDUAL {
                    break;
                }
            }
            w
        }
    };
    let lambda_max = lambda_max(matrix, &weights);
    Priorities {
        weights,
        lambda_max,
    }
}

pub fn ahp_priorities(
    matrix: &PairwiseMatrix,
    mode: PriorityMode,
) -> Result<Priorities, MethodError> {
    if matrix.n > MAX_PRIORITY_DIM {
        return Err(MethodError::DimensionTooLarge {
            n: matrix.n,
            max: MAX_PRIORITY_DIM,
        });
    }
    Ok(priorities(matrix, mode))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Consistency {
    pub ci: f64,
    pub cr: f64,
    pub lambda_max: f64,
}

/// Consistency index and ratio from the principal eigenvalue. Matrices of
/// order one or two are consistent by construction.
pub fn ahp_consistency(matrix: &PairwiseMatrix) -> Result<Consistency, MethodError> {
    let n = matrix.n;
    if n > MAX_CONSISTENCY_DIM {
        return Err(MethodError::DimensionTooLarge {
            n,
            max: MAX_CONSISTENCY_DIM,
        });
    }
    let lambda_max = priorities(matrix, PriorityMode::Eigenvector).lambda_max;
    if n <= 2 {
        return Ok(Consistency {
            ci: 0.0,
            cr: 0.0,
            lambda_max,
        });
    }
    let ci = (lambda_max - n as f64) / (n as f64 - 1.0);
    let cr = ci / RANDOM_INDEX[n];
    Ok(Consistency { ci, cr, lambda_max })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InconsistencyPolicy {
    #[default]
    Warn,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AhpOptions {
    pub mode: PriorityMode,
    pub cr_threshold: f64,
    pub on_inconsistency: InconsistencyPolicy,
}

impl Default for AhpOptions {
    fn default() -> Self {
        Self {
            mode: PriorityMode::GeometricMean,
            cr_threshold: 0.1,
            on_inconsistency: InconsistencyPolicy::Warn,
        }
    }
}

/// Global priorities: each alternative's local priority under a criterion,
/// weighted by that criterion's priority, summed over criteria.
pub fn ahp_rank(
    alternatives: &[String],
    criteria_matrix: &PairwiseMatrix,
    alternative_matrices: &[PairwiseMatrix],
    options: AhpOptions,
) -> Result<Ranking, MethodError> {
    let n_alt = alternatives.len();
    if n_alt > MAX_ALTERNATIVES {
        return Err(MethodError::TooManyAlternatives {
            n: n_alt,
            max: MAX_ALTERNATIVES,
        });
    }
    if alternative_matrices.len() != criteria_matrix.dim() {
        return Err(MethodError::DimensionMismatch(format!(
            "{} alternative matrices for {} criteria",
            alternative_matrices.len(),
            criteria_matrix.dim()
        )));
    }
    if let Some(bad) = alternative_matrices.iter().find(|m| m.dim() != n_alt) {
        return Err(MethodError::DimensionMismatch(format!(
            "alternative matrix of order {} for {n_alt} alternatives",
            bad.dim()
        )));
    }

    let mut warnings = Vec::new();
    let labelled = std::iter::once(("criteria".to_string(), criteria_matrix)).chain(
        alternative_matrices
            .iter()
            .enumerate()
            .map(|(k, m)| (format!("criterion {k}"), m)),
    );
    for (label, matrix) in labelled {
        let consistency = ahp_consistency(matrix)?;
        if consistency.cr > options.cr_threshold {
            match options.on_inconsistency {
                InconsistencyPolicy::Error => {
                    return Err(MethodError::InconsistentMatrix {
                        matrix: label,
                        cr: consistency.cr,
                    })
                }
                InconsistencyPolicy::Warn => warnings.push(format!(
                    "comparisons for {label} have CR {:.4}",
                    consistency.cr
                )),
            }
        }
    }

    let criteria_weights = ahp_priorities(criteria_matrix, options.mode)?.weights;
    let mut scores = vec![0.0; n_alt];
    for (cw, matrix) in criteria_weights.iter().zip(alternative_matrices) {
        let local = ahp_priorities(matrix, options.mode)?.weights;
        for (score, p) in scores.iter_mut().zip(local) {
            *score += cw * p;
        }
    }
    let mut ranking = Ranking::from_scores(alternatives, &scores);
    ranking.warnings = warnings;
    Ok(ranking)
}

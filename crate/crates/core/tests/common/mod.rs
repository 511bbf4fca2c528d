//! Helpers shared by the integration tests.
#![allow(dead_code)]

use mcdm_engine::methods::promethee::PreferenceFunction;
use mcdm_engine::model::Direction;

/// Independent flows: for each ordered pair and criterion, the preference
/// degree written out from the shape definitions.
pub fn oracle_flows(
    table: &[Vec<f64>],
    dirs: &[Direction],
    w: &[f64],
    prefs: &[PreferenceFunction],
) -> Vec<f64> {
    let n = table.len();
    let degree = |p: &PreferenceFunction, d: f64| -> f64 {
        match *p {
            PreferenceFunction::Usual => {
                if d > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            PreferenceFunction::VShape { p } => (d / p).clamp(0.0, 1.0),
            PreferenceFunction::Linear { q, p } => {
                if d <= q {
                    0.0
                } else if d >= p {
                    1.0
                } else {
                    (d - q) / (p - q)
                }
            }
        }
    };
    (0..n)
        .map(|a| {
            let mut total = 0.0;
            for b in 0..n {
                if a == b {
                    continue;
                }
                for k in 0..w.len() {
                    let gain = match dirs[k] {
                        Direction::Maximize => table[a][k] - table[b][k],
                        Direction::Minimize => table[b][k] - table[a][k],
                    };
                    total += w[k] * (degree(&prefs[k], gain) - degree(&prefs[k], -gain));
                }
            }
            total / (n - 1) as f64
        })
        .collect()
}

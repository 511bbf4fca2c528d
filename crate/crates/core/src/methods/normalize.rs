use crate::model::Direction;

#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub values: Vec<f64>,
    /// The column was constant and every value was set to 0.5.
    pub degenerate: bool,
}

/// Min-max scaling to `[0, 1]`, oriented so that 1 is always best.
pub fn minmax_normalize(column: &[f64], direction: Direction) -> Normalized {
    let (min, max) = column
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let range = max - min;
    if column.is_empty() || range <= 0.0 {
        return Normalized {
            values: vec![0.5; column.len()],
            degenerate: true,
        };
    }
    let values = column
        .iter()
        .map(|&v| match direction {
            Direction::Maximize => (v - min) / range,
            Direction::Minimize => (max - v) / range,
        })
        .collect();
    Normalized {
        values,
        degenerate: false,
    }
}

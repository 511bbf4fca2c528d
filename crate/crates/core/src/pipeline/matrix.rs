use crate::registry::{Attribute, SelectionReport};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MatrixLayout {
    /// Expressed attributes only.
    #[default]
    Expressed,
    /// Every attribute; unexpressed ones have blank cells.
    FullGrid,
}

/// Renders the selection matrix as comma-separated text: a header of method
/// ids, one 0/1 row per attribute in canonical order, and a final
/// `candidate` row. Lines end with `\n`.
pub fn emit_matrix(report: &SelectionReport, layout: MatrixLayout) -> String {
    let mut out = String::from("attribute");
    for m in &report.methods {
        out.push(',');
        out.push_str(m.as_str());
    }
    out.push('\n');
    let bit = |b: bool| if b { "1" } else { "0" };
    for attr in Attribute::ALL {
        match (report.row(attr), layout) {
            (Some(row), _) => {
                out.push_str(attr.name());
                for &c in &row.cells {
                    out.push(',');
                    out.push_str(bit(c));
                }
                out.push('\n');
            }
            (None, MatrixLayout::FullGrid) => {
                out.push_str(attr.name());
                out.push_str(&",".repeat(report.methods.len()));
                out.push('\n');
            }
            (None, MatrixLayout::Expressed) => {}
        }
    }
    out.push_str("candidate");
    for m in &report.methods {
        out.push(',');
        out.push_str(bit(report.is_candidate(m)));
    }
    out.push('\n');
    out
}

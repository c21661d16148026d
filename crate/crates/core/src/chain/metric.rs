use super::{CellLabel, ChainComplex, Factor, FactorCell};
use crate::{Error, Result};

/// Distance between two cells of a graph product: the maximum over factors of
/// the factor distance.
///
/// In one factor, identical cells are at distance 0; a vertex and a cell are
/// at the graph distance between their footprints (a vertex is its own
/// footprint, an edge its endpoint pair); two distinct edges are one further
/// apart than their footprints, so edges sharing a vertex are at distance 1.
pub fn cell_distance(c: &ChainComplex, a: &CellLabel, b: &CellLabel) -> Result<usize> {
    let factors = c
        .factors()
        .ok_or_else(|| Error::Precondition("complex carries no factor graphs".into()))?;
    let dist = c
        .factor_distances()
        .ok_or_else(|| Error::Precondition("cell distance needs graph factors".into()))?;
    if a.0.len() != factors.len() || b.0.len() != factors.len() {
        return Err(Error::InvalidInput(format!("labels {a} and {b} do not match {} factors", factors.len())));
    }
    let mut out = 0;
    for (k, f) in factors.iter().enumerate() {
        let Factor::Graph { graph } = f else {
            unreachable!("checked by factor_distances")
        };
        let fp = |cell: &FactorCell| -> Vec<usize> {
            if cell.dim == 0 {
                vec![cell.id as usize]
            } else {
                let (u, v) = graph.edge(cell.id as usize);
                vec![u, v]
            }
        };
        let (x, y) = (a.0[k], b.0[k]);
        if x == y {
            continue;
        }
        let mut d = usize::MAX;
        for &u in &fp(&x) {
            for &v in &fp(&y) {
                if let Some(duv) = dist[k][u][v] {
                    d = d.min(duv);
                }
            }
        }
        if d == usize::MAX {
            return Err(Error::InvalidInput(format!("cells {a} and {b} lie in different components")));
        }
        if x.dim == 1 && y.dim == 1 {
            d += 1;
        }
        out = out.max(d);
    }
    Ok(out)
}

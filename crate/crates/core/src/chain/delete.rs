use serde::Serialize;

use super::{betti_native, CellLabel, ChainComplex, Factor};
use crate::{Error, Result};

/// Cells removed by deleting `cells` and everything above them, per degree,
/// as sorted indices. Labels are accepted when well formed for the complex,
/// whether or not the cell is still present.
pub fn deletion_closure(c: &ChainComplex, cells: &[CellLabel]) -> Result<Vec<Vec<usize>>> {
    let mut removed = vec![vec![false; 0]; c.dims.len()];
    for (i, r) in removed.iter_mut().enumerate() {
        *r = vec![false; c.dim(i)];
    }
    for label in cells {
        check_label(c, label)?;
        if let Some((d, i)) = c.find(label) {
            removed[d][i] = true;
        }
    }
    for i in 1..c.dims.len() {
        let bd = c.boundary(i).expect("degree in range").transpose();
        for cell in 0..c.dim(i) {
            if !removed[i][cell] && bd.row(cell).iter().any(|&(f, _)| removed[i - 1][f]) {
                removed[i][cell] = true;
            }
        }
    }
    Ok(removed
        .into_iter()
        .map(|r| r.into_iter().enumerate().filter(|e| e.1).map(|e| e.0).collect())
        .collect())
}

fn check_label(c: &ChainComplex, label: &CellLabel) -> Result<()> {
    let unknown = || Error::InvalidInput(format!("unknown cell label {label}"));
    let d = label.degree();
    if d > c.length() {
        return Err(unknown());
    }
    let arity = c.labels.iter().flatten().next().map(|l| l.0.len());
    if arity.is_some_and(|a| a != label.0.len()) {
        return Err(unknown());
    }
    if let Some(factors) = &c.factors {
        for (f, cell) in factors.iter().zip(&label.0) {
            let count = match (f, cell.dim) {
                (Factor::Graph { graph }, 0) => graph.n(),
                (Factor::Graph { graph }, 1) => graph.num_edges(),
                (Factor::Hypergraph { graph }, 0) => graph.n() - graph.n_left().unwrap_or(0),
                (Factor::Hypergraph { graph }, 1) => graph.n_left().unwrap_or(0),
                _ => 0,
            };
            if cell.id as usize >= count {
                return Err(unknown());
            }
        }
    }
    Ok(())
}

/// Remove `cells` and, transitively, every higher cell whose boundary meets a
/// removed cell. Boundaries are restricted to the surviving cells.
pub fn delete_cells(c: &ChainComplex, cells: &[CellLabel]) -> Result<ChainComplex> {
    let removed = deletion_closure(c, cells)?;
    let keep: Vec<Vec<usize>> = removed
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut gone = r.iter().peekable();
            (0..c.dim(i))
                .filter(|x| {
                    if gone.peek() == Some(&x) {
                        gone.next();
                        false
                    } else {
                        true
                    }
                })
                .collect()
        })
        .collect();
    let dims = keep.iter().map(Vec::len).collect();
    let boundaries = (1..c.dims.len())
        .map(|i| c.boundary(i).expect("degree in range").select(&keep[i - 1], &keep[i]))
        .collect();
    let labels = keep
        .iter()
        .enumerate()
        .map(|(i, k)| k.iter().map(|&x| c.labels[i][x].clone()).collect())
        .collect();
    ChainComplex::new(c.q, dims, boundaries, labels, c.factors.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MvReport {
    pub b2_before: usize,
    pub b2_after: usize,
    /// `b_2` after each deletion.
    pub steps: Vec<usize>,
    pub holds: bool,
}

/// Delete the given 2-cells one at a time and check that `b_2` never drops by
/// more than one per step. Cells above degree 2 that sit on a deleted cell go
/// with it. Homology is taken over `Z_q` for prime `q`, otherwise over its
/// smallest prime factor.
pub fn deletion_b2_bound_check(c: &ChainComplex, two_cells: &[CellLabel]) -> Result<MvReport> {
    if c.length() < 2 {
        return Err(Error::Precondition("complex has no 2-cells".into()));
    }
    if let Some(l) = two_cells.iter().find(|l| l.degree() != 2) {
        return Err(Error::InvalidInput(format!("{l} is not a 2-cell")));
    }
    let b2_before = betti_native(c)?[2];
    let mut cur = c.clone();
    let mut prev = b2_before;
    let mut steps = Vec::with_capacity(two_cells.len());
    let mut holds = true;
    for cell in two_cells {
        cur = delete_cells(&cur, std::slice::from_ref(cell))?;
        let b2 = betti_native(&cur)?[2];
        holds &= b2 == prev || b2 + 1 == prev;
        steps.push(b2);
        prev = b2;
    }
    holds &= prev + two_cells.len() >= b2_before;
    Ok(MvReport { b2_before, b2_after: prev, steps, holds })
}

#[cfg(test)]
mod tests {
    use super::super::tests::gc;
    use super::super::{betti, power};
    use super::*;

    #[test]
    fn spec_examples() {
        let tri = gc("cycle(3)", 2);
        let path = delete_cells(&tri, &["(v0)".parse().unwrap()]).unwrap();
        assert_eq!(betti(&path, 2).unwrap(), vec![1, 0]);

        let k4sq = power(&gc("k4", 2), 2).unwrap();
        let cut = delete_cells(&k4sq, &["(v0,v0)".parse().unwrap()]).unwrap();
        let removed: Vec<usize> = k4sq.dims().iter().zip(cut.dims()).map(|(a, b)| a - b).collect();
        assert_eq!(removed, vec![1, 6, 9]);
        assert_eq!(delete_cells(&k4sq, &[]).unwrap(), k4sq);
    }

    #[test]
    fn idempotent_and_rejects_unknown() {
        let k4sq = power(&gc("k4", 2), 2).unwrap();
        let s: Vec<CellLabel> = vec!["(v1,v2)".parse().unwrap(), "(e0,e5)".parse().unwrap()];
        let once = delete_cells(&k4sq, &s).unwrap();
        assert_eq!(delete_cells(&once, &s).unwrap(), once);
        assert!(delete_cells(&k4sq, &["(v9,v0)".parse().unwrap()]).is_err());
        assert!(delete_cells(&k4sq, &["(v1)".parse().unwrap()]).is_err());
    }

    #[test]
    fn mayer_vietoris_examples() {
        let torus = power(&gc("cycle(3)", 2), 2).unwrap();
        let r = deletion_b2_bound_check(&torus, &[torus.labels(2)[0].clone()]).unwrap();
        assert_eq!((r.b2_before, r.b2_after, r.holds), (1, 0, true));
        let r = deletion_b2_bound_check(&torus, &[]).unwrap();
        assert_eq!((r.b2_before, r.b2_after, r.holds), (1, 1, true));
        assert!(deletion_b2_bound_check(&torus, &[torus.labels(1)[0].clone()]).is_err());

        let k4sq = power(&gc("k4", 2), 2).unwrap();
        let cells: Vec<CellLabel> = [3, 10, 17, 22, 31].iter().map(|&i| k4sq.labels(2)[i].clone()).collect();
        let r = deletion_b2_bound_check(&k4sq, &cells).unwrap();
        assert!(r.holds && r.b2_after >= 4);
    }
}

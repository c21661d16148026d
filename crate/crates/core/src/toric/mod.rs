//! Toric-code operators on the 1-cells of a complex.
//!
//! `A_s` is X-type on the 1-cells incident to the 0-cell `s` (row `s` of
//! `d_1`), `B_p` is Z-type on the boundary of the 2-cell `p` (column `p` of
//! `d_2`). Their symplectic pairing is an entry of `d_1 d_2`, so they commute.

mod defect;
mod pauli;
mod ratio;
mod wilson;

pub use defect::{defect_ops, verify_defect, DefectCheck, DefectOps};
pub use pauli::PauliOp;
pub use ratio::{coboundary_inverse_ratio, ratio_brute_force, RatioMode, RatioReport, RATIO_EXACT_DIM};
pub use wilson::{cycle_basis, wilson_distance, wilson_loop, wilson_vector, WILSON_EDGE_LIMIT};

use crate::chain::ChainComplex;
use crate::{Error, Result};

fn check_cell(c: &ChainComplex, degree: usize, idx: usize) -> Result<()> {
    if c.length() < 1 {
        return Err(Error::Precondition("complex has no 1-cells".into()));
    }
    if idx >= c.dim(degree) {
        return Err(Error::InvalidInput(format!("{degree}-cell {idx} out of range ({})", c.dim(degree))));
    }
    Ok(())
}

/// `A_s` for the 0-cell with index `s`.
pub fn vertex_operator(c: &ChainComplex, s: usize) -> Result<PauliOp> {
    check_cell(c, 0, s)?;
    let d1 = c.boundary(1).expect("length checked");
    let mut x = vec![0; c.dim(1)];
    for &(e, v) in d1.row(s) {
        x[e] = v;
    }
    PauliOp::x_type(c.modulus(), x)
}

/// `B_p` for the 2-cell with index `p`.
pub fn plaquette_operator(c: &ChainComplex, p: usize) -> Result<PauliOp> {
    if c.length() < 2 {
        return Err(Error::Precondition("complex has no 2-cells".into()));
    }
    check_cell(c, 2, p)?;
    let d2 = c.boundary(2).expect("length checked");
    let mut z = vec![0; c.dim(1)];
    for (e, v) in d2.column(p) {
        z[e] = v;
    }
    PauliOp::z_type(c.modulus(), z)
}

pub fn vertex_operators(c: &ChainComplex) -> Result<Vec<PauliOp>> {
    (0..c.dim(0)).map(|s| vertex_operator(c, s)).collect()
}

pub fn plaquette_operators(c: &ChainComplex) -> Result<Vec<PauliOp>> {
    if c.length() < 2 {
        return Ok(Vec::new());
    }
    (0..c.dim(2)).map(|p| plaquette_operator(c, p)).collect()
}

/// Product of a list of operators on `n` qudits.
pub fn product(n: usize, q: u64, ops: &[PauliOp]) -> Result<PauliOp> {
    ops.iter().try_fold(PauliOp::identity(n, q), |acc, p| acc.mul(p))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::chain::{graph_complex, power};
    use crate::graphs::named_graph;

    pub(crate) fn square(name: &str, q: u64) -> ChainComplex {
        power(&graph_complex(&named_graph(name).unwrap(), q).unwrap(), 2).unwrap()
    }

    #[test]
    fn torus_operator_weights() {
        let c = square("cycle(3)", 2);
        for a in vertex_operators(&c).unwrap() {
            assert_eq!(a.weight(), 4);
            assert!(a.is_hermitian());
        }
        let bs = plaquette_operators(&c).unwrap();
        assert!(bs.iter().all(|b| b.weight() == 4));
        assert!(product(18, 2, &bs).unwrap().is_identity());
        assert!(product(18, 2, &vertex_operators(&c).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn regular_square_vertex_weight() {
        let c = square("petersen", 2);
        assert!(vertex_operators(&c).unwrap().iter().all(|a| a.weight() == 6));
    }

    #[test]
    fn isolated_vertex_is_identity() {
        let g = crate::graphs::Graph::new(3, [(0, 1)]).unwrap();
        let c = graph_complex(&g, 2).unwrap();
        assert!(vertex_operator(&c, 2).unwrap().is_identity());
        assert!(vertex_operator(&c, 3).is_err());
    }

    #[test]
    fn vertex_and_plaquette_commute() {
        for (name, q) in [("cycle(3)", 2), ("cycle(3)", 3), ("k4", 5), ("petersen", 2)] {
            let c = square(name, q);
            let a = vertex_operators(&c).unwrap();
            let b = plaquette_operators(&c).unwrap();
            for x in &a {
                for z in &b {
                    assert!(x.commutes(z).unwrap());
                }
            }
        }
    }
}

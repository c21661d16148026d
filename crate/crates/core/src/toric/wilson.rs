use super::PauliOp;
use crate::bits::{for_each_in_coset, BitVec, F2Basis};
use crate::chain::{graph_complex, CellLabel, ChainComplex, Factor, FactorCell};
use crate::graphs::Graph;
use crate::ringlin::{kernel_basis_mod_p, solve_mod_p, SparseMat};
use crate::{Error, Result};

/// Largest edge count for exact Wilson distances.
pub const WILSON_EDGE_LIMIT: usize = 24;

/// A basis of the cycle space `H_1(G; F_2)` as edge indicator vectors.
pub fn cycle_basis(g: &Graph) -> Result<Vec<BitVec>> {
    let c = graph_complex(g, 2)?;
    let d1 = c.boundary(1).expect("graph complexes have length 1");
    Ok(kernel_basis_mod_p(d1, 2)?.iter().map(|v| BitVec::from_u64s(v)).collect())
}

/// Z-type operator on a 1-cycle of the complex.
pub fn wilson_loop(c: &ChainComplex, cycle: &[u64]) -> Result<PauliOp> {
    if c.length() < 1 || cycle.len() != c.dim(1) {
        return Err(Error::DimensionMismatch(format!("cycle of length {} for {} 1-cells", cycle.len(), c.dim(1))));
    }
    let q = c.modulus();
    let reduced: Vec<u64> = cycle.iter().map(|v| v % q).collect();
    let d1 = c.boundary(1).expect("length checked");
    if d1.mul_vec(&reduced)?.iter().any(|&v| v != 0) {
        return Err(Error::InvalidInput("chain is not a cycle".into()));
    }
    PauliOp::z_type(q, reduced)
}

fn is_cycle(g: &Graph, c: &BitVec) -> bool {
    let mut deg = vec![false; g.n()];
    for e in c.ones() {
        let (u, v) = g.edge(e);
        deg[u] ^= true;
        deg[v] ^= true;
    }
    deg.iter().all(|d| !d)
}

/// Sign vector `s(v)`: entry `k` is `(-1)^<x, v x c_k>` where `v x c_k` is the
/// cycle `c_k` of the second factor placed at the vertex `v` of the first.
pub fn wilson_vector(c: &ChainComplex, x: &BitVec, v: usize, basis: &[BitVec]) -> Result<Vec<i8>> {
    let Some([Factor::Graph { graph: g }, Factor::Graph { graph: h }]) = c.factors() else {
        return Err(Error::Precondition("Wilson vectors need a product of two graphs".into()));
    };
    if x.len() != c.dim(1) {
        return Err(Error::DimensionMismatch(format!("chain of length {} for {} 1-cells", x.len(), c.dim(1))));
    }
    if v >= g.n() {
        return Err(Error::InvalidInput(format!("vertex {v} out of range")));
    }
    basis
        .iter()
        .map(|cyc| {
            if cyc.len() != h.num_edges() || !is_cycle(h, cyc) {
                return Err(Error::InvalidInput("basis vector is not a cycle of the second factor".into()));
            }
            let mut parity = false;
            for e in cyc.ones() {
                let l = CellLabel(vec![FactorCell::vertex(v), FactorCell::edge(e)]);
                let (_, k) = c.find(&l).ok_or_else(|| Error::InvalidInput(format!("cell {l} missing")))?;
                parity ^= x.get(k);
            }
            Ok(if parity { -1 } else { 1 })
        })
        .collect()
}

/// Minimum Hamming distance between edge sets of `g` whose pairings with the
/// cycle basis give the sign vectors `s` and `s2`.
///
/// This is the minimum weight of the coset `u0 + cut space`, where `u0` is any
/// edge set whose pairing with each basis cycle is odd exactly where the signs
/// differ.
pub fn wilson_distance(s: &[i8], s2: &[i8], g: &Graph) -> Result<usize> {
    if g.num_edges() > WILSON_EDGE_LIMIT {
        return Err(Error::SizeGuard { what: "Wilson distance edge count", limit: WILSON_EDGE_LIMIT, actual: g.num_edges() });
    }
    let basis = cycle_basis(g)?;
    if s.len() != basis.len() || s2.len() != basis.len() {
        return Err(Error::DimensionMismatch(format!(
            "sign vectors of length {} and {} for {} cycles",
            s.len(),
            s2.len(),
            basis.len()
        )));
    }
    let m = g.num_edges();
    let rows: Vec<Vec<u64>> = basis.iter().map(|b| b.to_u64s()).collect();
    let pairing = SparseMat::from_dense(&rows, m, 2)?;
    let target: Vec<u64> = s.iter().zip(s2).map(|(a, b)| u64::from(a != b)).collect();
    let u0 = solve_mod_p(&pairing, &target, 2)?.expect("cycle basis is independent");
    let cuts: Vec<BitVec> = {
        let stars = g.incident_edges().into_iter().map(|es| BitVec::from_indices(m, es)).collect::<Vec<_>>();
        F2Basis::from_vectors(m, stars.iter()).vectors().cloned().collect()
    };
    let mut best = usize::MAX;
    for_each_in_coset(&BitVec::from_u64s(&u0), &cuts, |w| {
        best = best.min(w.weight());
        best > 0
    });
    Ok(best)
}

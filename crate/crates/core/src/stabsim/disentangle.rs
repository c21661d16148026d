use std::collections::VecDeque;

use serde::Serialize;

use super::{CliffordCircuit, Gate, StabilizerGroup};
use crate::chain::ChainComplex;
use crate::toric::{plaquette_operators, vertex_operator, PauliOp};
use crate::{Error, Result};

/// Result of growing the removed-vertex set until it covers the complex.
#[derive(Clone, Debug, Serialize)]
pub struct Disentangled {
    pub circuit: CliffordCircuit,
    /// Terms `T` of the final Hamiltonian `-sum T`, all diagonal in Z.
    pub final_terms: Vec<PauliOp>,
    /// Rounds elapsed, including rounds in which no vertex was active.
    pub rounds_used: usize,
    pub colors: usize,
    /// Largest 1-skeleton distance from the seed set.
    pub max_seed_distance: usize,
}

fn skeleton(c: &ChainComplex) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); c.dim(0)];
    if let Some(d1) = c.boundary(1) {
        for e in 0..c.dim(1) {
            let ends = d1.column(e);
            if let [(u, _), (v, _)] = ends[..] {
                adj[u].push((v, e));
                adj[v].push((u, e));
            }
        }
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

fn distances_from(adj: &[Vec<(usize, usize)>], sources: &[usize], limit: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = 0;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        if dist[u] == limit {
            continue;
        }
        for &(w, _) in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// First-fit coloring in index order in which vertices of one color are more
/// than `sep` steps apart.
fn separated_coloring(adj: &[Vec<(usize, usize)>], sep: usize) -> (Vec<usize>, usize) {
    let n = adj.len();
    let mut color = vec![usize::MAX; n];
    let mut used = 0;
    for v in 0..n {
        let near = distances_from(adj, &[v], sep);
        let taken: Vec<usize> = (0..n).filter(|&w| near[w] != usize::MAX && color[w] != usize::MAX).map(|w| color[w]).collect();
        let c = (0..).find(|c| !taken.contains(c)).expect("unbounded");
        color[v] = c;
        used = used.max(c + 1);
    }
    (color, used)
}

/// Clifford circuit mapping the Hamiltonian with the vertex terms of `seeds`
/// removed to a Z-diagonal one.
///
/// Each round takes the seed-set vertices of one color that still have a
/// neighbour outside the set and applies `U_s`, the product of
/// `exp(pi/4 Z_e A_s')` over the edges `e = (s, s')` leaving the set. Colors
/// separate same-colored vertices by more than three steps, so the blocks of
/// a round act on disjoint edges.
pub fn disentangle_circuit(c: &ChainComplex, seeds: &[usize]) -> Result<Disentangled> {
    if c.modulus() != 2 {
        return Err(Error::Precondition("the disentangling circuit is built for qubits".into()));
    }
    if c.length() < 1 {
        return Err(Error::Precondition("complex has no 1-cells".into()));
    }
    if seeds.is_empty() {
        return Err(Error::InvalidInput("the seed set is empty".into()));
    }
    let nv = c.dim(0);
    let n = c.dim(1);
    if let Some(&s) = seeds.iter().find(|&&s| s >= nv) {
        return Err(Error::InvalidInput(format!("0-cell {s} out of range")));
    }
    let adj = skeleton(c);
    let seed_dist = distances_from(&adj, seeds, usize::MAX);
    if seed_dist.contains(&usize::MAX) {
        return Err(Error::Precondition("some 0-cell is not connected to the seed set".into()));
    }
    let max_seed_distance = seed_dist.iter().copied().max().unwrap_or(0);
    let (color, colors) = separated_coloring(&adj, 3);

    let mut in_set = vec![false; nv];
    for &s in seeds {
        in_set[s] = true;
    }
    let mut circuit = CliffordCircuit::new(n);
    let mut z_edges = Vec::new();
    let mut rounds_used = 0;
    let mut idle = 0;
    while in_set.iter().any(|b| !b) {
        let col = rounds_used % colors;
        rounds_used += 1;
        let active: Vec<usize> =
            (0..nv).filter(|&s| in_set[s] && color[s] == col && adj[s].iter().any(|&(w, _)| !in_set[w])).collect();
        if active.is_empty() {
            idle += 1;
            if idle > colors {
                unreachable!("connected complexes always have an active vertex");
            }
            continue;
        }
        idle = 0;
        let mut round = Vec::new();
        let mut joined = Vec::new();
        for s in active {
            let mut block = Vec::new();
            for &(w, e) in &adj[s] {
                if in_set[w] {
                    continue;
                }
                let q = PauliOp::single(n, 2, e, 0, 1).mul(&vertex_operator(c, w)?)?;
                block.push(Gate::PauliExp { q });
                z_edges.push(e);
                joined.push(w);
            }
            round.push(block);
        }
        for w in joined {
            in_set[w] = true;
        }
        circuit.rounds.push(round);
    }
    z_edges.sort_unstable();
    let mut final_terms = plaquette_operators(c)?;
    final_terms.extend(z_edges.into_iter().map(|e| PauliOp::single(n, 2, e, 0, 1)));
    Ok(Disentangled { circuit, final_terms, rounds_used, colors, max_seed_distance })
}

/// Stabilizer group of `U^dagger |0...0>`, a ground state of the Hamiltonian
/// with the seed vertex terms removed.
pub fn ground_stabilizers(c: &ChainComplex, seeds: &[usize]) -> Result<StabilizerGroup> {
    let d = disentangle_circuit(c, seeds)?;
    let n = c.dim(1);
    let gens = (0..n)
        .map(|k| d.circuit.conjugate_inverse(&PauliOp::single(n, 2, k, 0, 1)))
        .collect::<Result<Vec<_>>>()?;
    StabilizerGroup::new(n, gens)
}

#[cfg(test)]
mod tests {
    use super::super::{dense, expectation};
    use super::*;
    use crate::chain::{graph_complex, power};
    use crate::graphs::named_graph;
    use crate::toric::vertex_operators;

    fn torus() -> ChainComplex {
        power(&graph_complex(&named_graph("cycle(3)").unwrap(), 2).unwrap(), 2).unwrap()
    }

    #[test]
    fn torus_becomes_diagonal() {
        let c = torus();
        let d = disentangle_circuit(&c, &[0]).unwrap();
        assert!(d.final_terms.iter().all(|t| t.is_z_type()));
        assert_eq!(d.final_terms.len(), 9 + 8);
        assert!(d.circuit.rounds_disjoint());
        assert!(d.rounds_used <= d.colors * d.max_seed_distance);
        assert_eq!(d.circuit.gates().count(), 8);
        // the conjugated Hamiltonian terms are exactly the final terms
        let mut image: Vec<PauliOp> = plaquette_operators(&c).unwrap();
        for s in 1..9 {
            image.push(d.circuit.conjugate(&vertex_operator(&c, s).unwrap()).unwrap());
        }
        let mut want = d.final_terms.clone();
        let key = |p: &PauliOp| (p.z().to_vec(), p.x().to_vec(), p.phase());
        image.sort_by_key(key);
        want.sort_by_key(key);
        assert_eq!(image, want);
    }

    #[test]
    fn torus_ground_state_expectations() {
        let c = torus();
        let g = ground_stabilizers(&c, &[0]).unwrap();
        for b in plaquette_operators(&c).unwrap() {
            assert_eq!(expectation(&g, &b).unwrap(), 1);
        }
        let a = vertex_operators(&c).unwrap();
        for s in a.iter().skip(1) {
            assert_eq!(expectation(&g, s).unwrap(), 1);
        }
        // A_0 is the product of the other eight vertex terms on a closed surface
        assert_eq!(expectation(&g, &a[0]).unwrap(), 1);
    }

    #[test]
    fn torus_matches_dense_statevector() {
        let c = torus();
        let d = disentangle_circuit(&c, &[0]).unwrap();
        let psi = dense::apply_circuit_inverse(&d.circuit, &dense::basis_state(18, 0).unwrap()).unwrap();
        let g = ground_stabilizers(&c, &[0]).unwrap();
        for op in plaquette_operators(&c).unwrap().iter().chain(&vertex_operators(&c).unwrap()) {
            let v = dense::expectation(&psi, op).unwrap();
            assert!((v - expectation(&g, op).unwrap() as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn two_seeds_leave_their_terms_free() {
        // the product of all vertex terms is the identity, so only the
        // product of the two seed terms is fixed
        let c = graph_complex(&named_graph("path(5)").unwrap(), 2).unwrap();
        let d = disentangle_circuit(&c, &[0, 4]).unwrap();
        assert!(d.final_terms.iter().all(|t| t.is_z_type()));
        let g = ground_stabilizers(&c, &[0, 4]).unwrap();
        let a = vertex_operators(&c).unwrap();
        assert_eq!(expectation(&g, &a[0]).unwrap(), 0);
        assert_eq!(expectation(&g, &a[4]).unwrap(), 0);
        assert_eq!(expectation(&g, &a[0].mul(&a[4]).unwrap()).unwrap(), 1);
        assert!(a[1..4].iter().all(|s| expectation(&g, s).unwrap() == 1));
        let one = disentangle_circuit(&c, &[0]).unwrap();
        assert_eq!(one.circuit.depth(), 4);
    }

    #[test]
    fn full_seed_set_needs_no_gates() {
        let c = torus();
        let d = disentangle_circuit(&c, &(0..9).collect::<Vec<_>>()).unwrap();
        assert_eq!(d.circuit.depth(), 0);
        assert_eq!(d.final_terms.len(), 9);
        assert!(disentangle_circuit(&c, &[]).is_err());
    }

    #[test]
    fn petersen_square_rounds_are_disjoint() {
        let c = power(&graph_complex(&named_graph("petersen").unwrap(), 2).unwrap(), 2).unwrap();
        let d = disentangle_circuit(&c, &[0, 57]).unwrap();
        assert!(d.circuit.rounds_disjoint());
        assert!(d.final_terms.iter().all(|t| t.is_z_type()));
        assert!(d.rounds_used <= d.colors * d.max_seed_distance);
        assert_eq!(d.circuit.range(&c).unwrap(), d.circuit.depth() * d.circuit.max_block_diameter(&c).unwrap());
    }
}

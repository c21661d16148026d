//! Stabilizer groups, Clifford circuits and a dense statevector oracle.
//!
//! Qubit phases are exact; for `q > 2` only exponent (symplectic) data is
//! handled.

mod canonical;
pub mod dense;
mod disentangle;
mod gates;

pub use canonical::{apply_column_ops, canonical_form, verify_canonical, CanonicalForm, ColumnOp};
pub use disentangle::{disentangle_circuit, ground_stabilizers, Disentangled};
pub use gates::{conjugate, CliffordCircuit, Gate};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::BitVec;
use crate::ringlin::{kernel_basis_mod_p, SparseMat};
use crate::toric::PauliOp;
use crate::{Error, Result};

fn symplectic_bits(p: &PauliOp) -> BitVec {
    let n = p.n();
    BitVec::from_indices(
        2 * n,
        (0..n).filter(|&k| p.x()[k] == 1).chain((0..n).filter(|&k| p.z()[k] == 1).map(|k| k + n)),
    )
}

/// Row-reduced generator vectors, remembering which generators each row is
/// a combination of.
#[derive(Clone, Debug)]
struct Reducer {
    rows: Vec<(usize, BitVec, BitVec)>,
    m: usize,
}

impl Reducer {
    fn new(vectors: &[BitVec]) -> Self {
        let m = vectors.len();
        let mut r = Reducer { rows: Vec::new(), m };
        for (k, v) in vectors.iter().enumerate() {
            let (rem, mut combo) = r.reduce(v);
            combo.flip(k);
            if let Some(pivot) = rem.first_one() {
                for (_, row, c) in &mut r.rows {
                    if row.get(pivot) {
                        row.xor_assign(&rem);
                        c.xor_assign(&combo);
                    }
                }
                r.rows.push((pivot, rem, combo));
            }
        }
        r
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut rem = v.clone();
        let mut combo = BitVec::zeros(self.m);
        for (pivot, row, c) in &self.rows {
            if rem.get(*pivot) {
                rem.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        (rem, combo)
    }
}

/// A stabilizer group on qubits given by independent, commuting, Hermitian
/// generators.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOp>,
    #[serde(skip)]
    reducer: Reducer,
}

impl PartialEq for StabilizerGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.generators == other.generators
    }
}

impl StabilizerGroup {
    pub fn new(n: usize, generators: Vec<PauliOp>) -> Result<Self> {
        for g in &generators {
            if g.n() != n || g.modulus() != 2 {
                return Err(Error::DimensionMismatch(format!("generator {g:?} is not a qubit operator on {n} sites")));
            }
            if !g.is_hermitian() {
                return Err(Error::InvalidInput(format!("generator {g:?} is not Hermitian")));
            }
        }
        for (a, g) in generators.iter().enumerate() {
            for h in &generators[a + 1..] {
                if !g.commutes(h)? {
                    return Err(Error::InvalidInput(format!("generators {g:?} and {h:?} anticommute")));
                }
            }
        }
        let vectors: Vec<BitVec> = generators.iter().map(symplectic_bits).collect();
        let reducer = Reducer::new(&vectors);
        if reducer.rank() != generators.len() {
            return Err(Error::InvalidInput("generators are not independent".into()));
        }
        Ok(Self { n, generators, reducer })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `Some(+1)` or `Some(-1)` when `sign * p` lies in the group.
    pub fn sign_of(&self, p: &PauliOp) -> Result<Option<i8>> {
        if p.n() != self.n || p.modulus() != 2 {
            return Err(Error::DimensionMismatch(format!("operator on {} sites for a group on {}", p.n(), self.n)));
        }
        let (rem, combo) = self.reducer.reduce(&symplectic_bits(p));
        if !rem.is_zero() {
            return Ok(None);
        }
        let mut prod = PauliOp::identity(self.n, 2);
        for k in combo.ones() {
            prod = prod.mul(&self.generators[k])?;
        }
        if prod == *p {
            Ok(Some(1))
        } else if prod == p.clone().negate() {
            Ok(Some(-1))
        } else {
            Ok(None)
        }
    }

    pub fn conjugated(&self, gate: &Gate) -> Result<StabilizerGroup> {
        let gens = self.generators.iter().map(|g| conjugate(gate, g)).collect::<Result<Vec<_>>>()?;
        StabilizerGroup::new(self.n, gens)
    }

    /// Elements supported inside `region`, as a generating set.
    pub fn local_subgroup(&self, region: &[usize]) -> Result<Vec<PauliOp>> {
        let n = self.n;
        let mut inside = vec![false; n];
        for &k in region {
            if k >= n {
                return Err(Error::InvalidInput(format!("qubit {k} out of range")));
            }
            inside[k] = true;
        }
        let outside: Vec<usize> = (0..n).filter(|&k| !inside[k]).collect();
        let m = self.generators.len();
        let mut triples = Vec::new();
        for (col, g) in self.generators.iter().enumerate() {
            for (r, &k) in outside.iter().enumerate() {
                if g.x()[k] == 1 {
                    triples.push((2 * r, col, 1));
                }
                if g.z()[k] == 1 {
                    triples.push((2 * r + 1, col, 1));
                }
            }
        }
        let mat = SparseMat::from_triples(2 * outside.len(), m, 2, triples)?;
        kernel_basis_mod_p(&mat, 2)?
            .into_iter()
            .map(|combo| {
                let mut prod = PauliOp::identity(n, 2);
                for (k, &c) in combo.iter().enumerate() {
                    if c == 1 {
                        prod = prod.mul(&self.generators[k])?;
                    }
                }
                Ok(prod)
            })
            .collect()
    }
}

/// `<P>` in the (maximally mixed state on the) code space of the group:
/// `+-1` when `+-P` is in the group, else 0.
pub fn expectation(g: &StabilizerGroup, p: &PauliOp) -> Result<i8> {
    for s in g.generators() {
        if !s.commutes(p)? {
            return Ok(0);
        }
    }
    Ok(g.sign_of(p)?.unwrap_or(0))
}

/// Whether two stabilizer states have the same reduced state on `region`,
/// decided by comparing their signed subgroups supported inside it.
pub fn reduced_state_equal(g1: &StabilizerGroup, g2: &StabilizerGroup, region: &[usize]) -> Result<bool> {
    if g1.n() != g2.n() {
        return Err(Error::DimensionMismatch(format!("groups on {} and {} qubits", g1.n(), g2.n())));
    }
    let l1 = g1.local_subgroup(region)?;
    let l2 = g2.local_subgroup(region)?;
    if l1.len() != l2.len() {
        return Ok(false);
    }
    for p in &l1 {
        if g2.sign_of(p)? != Some(1) {
            return Ok(false);
        }
    }
    for p in &l2 {
        if g1.sign_of(p)? != Some(1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A seeded random stabilizer group: random Clifford gates applied to
/// `+-Z_0 .. +-Z_{k-1}` on `n >= 2` qubits.
pub fn random_group(n: usize, k: usize, seed: u64) -> StabilizerGroup {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = StabilizerGroup::new(
        n,
        (0..k).map(|i| PauliOp::single(n, 2, i, 0, 1).with_phase(if rng.random() { 2 } else { 0 })).collect(),
    )
    .unwrap();
    for _ in 0..4 * n {
        let gate = match rng.random_range(0..3) {
            0 => Gate::H { qubit: rng.random_range(0..n) },
            1 => {
                let c = rng.random_range(0..n);
                let t = (c + rng.random_range(1..n)) % n;
                Gate::Cx { control: c, target: t }
            }
            _ => {
                let e = rng.random_range(0..n);
                let f = (e + rng.random_range(1..n)) % n;
                // Z_e (X_e X_f) squares to -1
                let xx = PauliOp::single(n, 2, e, 1, 0).mul(&PauliOp::single(n, 2, f, 1, 0)).unwrap();
                let q = PauliOp::single(n, 2, e, 0, 1).mul(&xx).unwrap();
                Gate::PauliExp { q }
            }
        };
        g = g.conjugated(&gate).unwrap();
    }
    g
}

#[cfg(test)]
mod tests {
    use super::dense;
    use super::*;
    use rand::Rng;
    use proptest::prelude::*;

    fn random_pauli(n: usize, rng: &mut ChaCha8Rng) -> PauliOp {
        let x: Vec<u64> = (0..n).map(|_| rng.random_range(0..2)).collect();
        let z: Vec<u64> = (0..n).map(|_| rng.random_range(0..2)).collect();
        let p = PauliOp::new(2, x, z, 0).unwrap();
        let xz = p.x().iter().zip(p.z()).filter(|(a, b)| **a == 1 && **b == 1).count() as u8;
        p.with_phase(xz % 2 + 2 * rng.random_range(0..2) as u8)
    }

    #[test]
    fn rejects_bad_generators() {
        let x = PauliOp::single(2, 2, 0, 1, 0);
        let z = PauliOp::single(2, 2, 0, 0, 1);
        assert!(StabilizerGroup::new(2, vec![x.clone(), z]).is_err());
        assert!(StabilizerGroup::new(2, vec![x.clone(), x.clone()]).is_err());
        assert!(StabilizerGroup::new(2, vec![x.with_phase(1)]).is_err());
    }

    #[test]
    fn generator_expectations() {
        let g = random_group(5, 5, 3);
        for s in g.generators() {
            assert_eq!(expectation(&g, s).unwrap(), 1);
            assert_eq!(expectation(&g, &s.clone().negate()).unwrap(), -1);
        }
        let x_only = StabilizerGroup::new(3, (0..3).map(|k| PauliOp::single(3, 2, k, 1, 0)).collect()).unwrap();
        assert_eq!(expectation(&x_only, &PauliOp::single(3, 2, 1, 0, 1)).unwrap(), 0);
    }

    #[test]
    fn expectations_match_dense_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..50 {
            let k = 1 + seed as usize % 6;
            let g = random_group(6, k, seed);
            let proj = dense::projector(&g).unwrap();
            let tr = proj.trace().re;
            for _ in 0..20 {
                let mut p = random_pauli(6, &mut rng);
                if rng.random_range(0..3) == 0 {
                    p = g.generators()[rng.random_range(0..k)].clone();
                }
                let m = dense::pauli_matrix(&p).unwrap();
                let val = (&proj * &m).trace().re / tr;
                assert!((val - expectation(&g, &p).unwrap() as f64).abs() < 1e-9, "seed {seed} {p:?}");
            }
        }
    }

    #[test]
    fn reduced_states_match_partial_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for seed in 0..30 {
            let g1 = random_group(6, 6, seed);
            let o = random_pauli(6, &mut rng);
            let g2 = StabilizerGroup::new(
                6,
                g1.generators()
                    .iter()
                    .map(|s| if s.commutes(&o).unwrap() { s.clone() } else { s.clone().negate() })
                    .collect(),
            )
            .unwrap();
            let s1 = dense::stabilizer_state(&g1).unwrap();
            let s2 = dense::stabilizer_state(&g2).unwrap();
            for region in [vec![0], vec![1, 2], vec![0, 3, 5], vec![2, 3, 4, 5]] {
                let r1 = dense::reduced_density(&s1, 6, &region).unwrap();
                let r2 = dense::reduced_density(&s2, 6, &region).unwrap();
                let same = (&r1 - &r2).norm() < 1e-9;
                assert_eq!(reduced_state_equal(&g1, &g2, &region).unwrap(), same, "seed {seed} {region:?}");
            }
        }
    }

    #[test]
    fn product_states_on_region() {
        let z = StabilizerGroup::new(2, vec![PauliOp::single(2, 2, 0, 0, 1), PauliOp::single(2, 2, 1, 0, 1)]).unwrap();
        let x = StabilizerGroup::new(2, vec![PauliOp::single(2, 2, 0, 1, 0), PauliOp::single(2, 2, 1, 0, 1)]).unwrap();
        assert!(!reduced_state_equal(&z, &x, &[0]).unwrap());
        assert!(reduced_state_equal(&z, &x, &[1]).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn membership_is_closed_under_products(seed in 0u64..1000, mask in 1u32..32) {
            let g = random_group(5, 5, seed);
            let mut p = PauliOp::identity(5, 2);
            for k in 0..5 {
                if mask >> k & 1 == 1 {
                    p = p.mul(&g.generators()[k]).unwrap();
                }
            }
            prop_assert_eq!(g.sign_of(&p).unwrap(), Some(1));
            prop_assert_eq!(g.sign_of(&p.negate()).unwrap(), Some(-1));
        }
    }
}

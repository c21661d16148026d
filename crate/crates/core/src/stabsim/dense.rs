//! Dense statevector and matrix oracle for small qubit systems.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{CliffordCircuit, Gate, StabilizerGroup};
use crate::toric::PauliOp;
use crate::{Error, Result};

/// Largest qubit count for statevectors.
pub const DENSE_QUBIT_LIMIT: usize = 18;
/// Largest qubit count for explicit matrices.
pub const MATRIX_QUBIT_LIMIT: usize = 10;

pub type State = Vec<Complex64>;

fn guard(n: usize, limit: usize, what: &'static str) -> Result<()> {
    if n > limit {
        return Err(Error::SizeGuard { what, limit, actual: n });
    }
    Ok(())
}

fn i_pow(k: u8) -> Complex64 {
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)]
        [k as usize % 4]
}

fn mask(v: &[u64]) -> usize {
    v.iter().enumerate().filter(|(_, &e)| e == 1).fold(0, |m, (k, _)| m | 1 << k)
}

/// `P |psi>`; qubit `k` is bit `k` of the basis index.
pub fn apply_pauli(p: &PauliOp, psi: &[Complex64]) -> Result<State> {
    let n = p.n();
    guard(n, DENSE_QUBIT_LIMIT, "dense qubit count")?;
    if p.modulus() != 2 || psi.len() != 1 << n {
        return Err(Error::DimensionMismatch(format!("state of length {} for {n} qubits", psi.len())));
    }
    let (xm, zm) = (mask(p.x()), mask(p.z()));
    let ph = i_pow(p.phase());
    let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
    for (b, &amp) in psi.iter().enumerate() {
        let sign = if (b & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[b ^ xm] = ph * amp * sign;
    }
    Ok(out)
}

pub fn pauli_matrix(p: &PauliOp) -> Result<DMatrix<Complex64>> {
    guard(p.n(), MATRIX_QUBIT_LIMIT, "dense matrix qubit count")?;
    columns(1 << p.n(), |col| apply_pauli(p, col))
}

fn columns(dim: usize, f: impl Fn(&[Complex64]) -> Result<State>) -> Result<DMatrix<Complex64>> {
    let mut m = DMatrix::zeros(dim, dim);
    for c in 0..dim {
        let mut e = vec![Complex64::new(0.0, 0.0); dim];
        e[c] = Complex64::new(1.0, 0.0);
        let v = f(&e)?;
        for r in 0..dim {
            m[(r, c)] = v[r];
        }
    }
    Ok(m)
}

pub fn apply_gate(gate: &Gate, psi: &[Complex64], n: usize) -> Result<State> {
    guard(n, DENSE_QUBIT_LIMIT, "dense qubit count")?;
    if psi.len() != 1 << n {
        return Err(Error::DimensionMismatch(format!("state of length {} for {n} qubits", psi.len())));
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    match *gate {
        Gate::PauliExp { ref q } => {
            let qpsi = apply_pauli(q, psi)?;
            Ok(psi.iter().zip(&qpsi).map(|(a, b)| (a + b) * r).collect())
        }
        Gate::H { qubit } => {
            let bit = 1 << qubit;
            let mut out = psi.to_vec();
            for b in (0..psi.len()).filter(|b| b & bit == 0) {
                let (a0, a1) = (psi[b], psi[b | bit]);
                out[b] = (a0 + a1) * r;
                out[b | bit] = (a0 - a1) * r;
            }
            Ok(out)
        }
        Gate::Cx { control, target } => {
            let mut out = psi.to_vec();
            for b in 0..psi.len() {
                if b >> control & 1 == 1 {
                    out[b ^ 1 << target] = psi[b];
                }
            }
            Ok(out)
        }
    }
}

pub fn gate_matrix(gate: &Gate, n: usize) -> Result<DMatrix<Complex64>> {
    guard(n, MATRIX_QUBIT_LIMIT, "dense matrix qubit count")?;
    columns(1 << n, |col| apply_gate(gate, col, n))
}

pub fn apply_circuit(c: &CliffordCircuit, psi: &[Complex64]) -> Result<State> {
    c.gates().try_fold(psi.to_vec(), |acc, g| apply_gate(g, &acc, c.n))
}

/// `U^dagger |psi>`.
pub fn apply_circuit_inverse(c: &CliffordCircuit, psi: &[Complex64]) -> Result<State> {
    let gates: Vec<&Gate> = c.gates().collect();
    gates.into_iter().rev().try_fold(psi.to_vec(), |acc, g| apply_gate(&g.inverse(), &acc, c.n))
}

pub fn basis_state(n: usize, index: usize) -> Result<State> {
    guard(n, DENSE_QUBIT_LIMIT, "dense qubit count")?;
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << n];
    v[index] = Complex64::new(1.0, 0.0);
    Ok(v)
}

/// `<psi| P |psi>`, real part.
pub fn expectation(psi: &[Complex64], p: &PauliOp) -> Result<f64> {
    let pp = apply_pauli(p, psi)?;
    Ok(psi.iter().zip(&pp).map(|(a, b)| a.conj() * b).sum::<Complex64>().re)
}

fn project(g: &StabilizerGroup, mut v: State) -> Result<State> {
    for s in g.generators() {
        let sv = apply_pauli(s, &v)?;
        v = v.iter().zip(&sv).map(|(a, b)| (a + b) * 0.5).collect();
    }
    Ok(v)
}

/// The joint `+1` eigenvector of a group with `n` generators.
pub fn stabilizer_state(g: &StabilizerGroup) -> Result<State> {
    let n = g.n();
    if g.len() != n {
        return Err(Error::Precondition(format!("group has {} generators on {n} qubits", g.len())));
    }
    for b in 0..1usize << n {
        let v = project(g, basis_state(n, b)?)?;
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return Ok(v.into_iter().map(|a| a / norm).collect());
        }
    }
    unreachable!("a stabilizer state overlaps some basis state")
}

/// Projector onto the joint `+1` eigenspace.
pub fn projector(g: &StabilizerGroup) -> Result<DMatrix<Complex64>> {
    guard(g.n(), MATRIX_QUBIT_LIMIT, "dense matrix qubit count")?;
    columns(1 << g.n(), |col| project(g, col.to_vec()))
}

/// Reduced density matrix of `psi` on `region` (in the listed qubit order).
pub fn reduced_density(psi: &[Complex64], n: usize, region: &[usize]) -> Result<DMatrix<Complex64>> {
    guard(region.len(), MATRIX_QUBIT_LIMIT, "reduced density qubit count")?;
    let rest: Vec<usize> = (0..n).filter(|k| !region.contains(k)).collect();
    let dim = 1 << region.len();
    let spread = |bits: usize, sites: &[usize]| {
        sites.iter().enumerate().fold(0usize, |m, (j, &k)| m | ((bits >> j & 1) << k))
    };
    let mut rho = DMatrix::zeros(dim, dim);
    for r in 0..1usize << rest.len() {
        let base = spread(r, &rest);
        for i in 0..dim {
            let a = psi[base | spread(i, region)];
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..dim {
                rho[(i, j)] += a * psi[base | spread(j, region)].conj();
            }
        }
    }
    Ok(rho)
}

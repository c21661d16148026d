use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::codes::CssCode;
use crate::stabsim::canonical_form;
use crate::{Error, Result};

/// Largest Hilbert-space dimension for the dense trace.
pub const BRUTE_DIM_LIMIT: usize = 4096;

/// Eigenvalues `2 cos(2 pi j / q)` of `U + U^dagger` for a clock or shift `U`.
pub fn term_spectrum(q: u64) -> Vec<f64> {
    (0..q).map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / q as f64).cos()).collect()
}

/// Thermal expectation of one term `T = U + U^dagger` under the Gibbs weight
/// `exp(beta T)`.
pub fn term_value(q: u64, beta: f64) -> f64 {
    let spec = term_spectrum(q);
    let top = spec.iter().cloned().fold(f64::MIN, f64::max);
    let w: Vec<f64> = spec.iter().map(|l| (beta * (l - top)).exp()).collect();
    spec.iter().zip(&w).map(|(l, w)| l * w).sum::<f64>() / w.iter().sum::<f64>()
}

#[derive(Clone, Debug, Serialize)]
pub struct ThermalReport {
    pub q: u64,
    pub beta: f64,
    pub x_terms: usize,
    pub z_terms: usize,
    pub per_term: f64,
    pub energy: f64,
}

/// `E(beta)` of `H = -sum (A_k + A_k^dagger) - sum (B_k + B_k^dagger)` for a
/// code without relations, where the terms decouple into single qudits.
pub fn thermal_energy_exact(code: &CssCode, beta: f64) -> Result<ThermalReport> {
    canonical_form(code)?;
    let (x_terms, z_terms) = (code.hx.rows(), code.hz.rows());
    let per_term = term_value(code.q, beta);
    Ok(ThermalReport {
        q: code.q,
        beta,
        x_terms,
        z_terms,
        per_term,
        energy: -((x_terms + z_terms) as f64) * per_term,
    })
}

/// `X^x Z^z` on qudits, qudit `k` being digit `k` of the basis index.
fn pauli_matrix(q: usize, x: &[u64], z: &[u64]) -> DMatrix<Complex64> {
    let n = x.len();
    let dim = q.pow(n as u32);
    let omega = |k: u64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / q as f64);
    let mut m = DMatrix::zeros(dim, dim);
    for b in 0..dim {
        let mut digits = b;
        let mut phase = 0u64;
        let mut target = 0;
        let mut place = 1;
        for k in 0..n {
            let d = (digits % q) as u64;
            digits /= q;
            phase += z[k] * d;
            target += ((d + x[k]) % q as u64) as usize * place;
            place *= q;
        }
        m[(target, b)] = omega(phase % q as u64);
    }
    m
}

/// `E(beta) = tr(H e^{-beta H}) / Z` from the dense Hamiltonian.
pub fn thermal_energy_brute(code: &CssCode, beta: f64) -> Result<f64> {
    Ok(gibbs_energy(&dense_spectrum(code)?, beta))
}

/// Eigenvalues of the dense code Hamiltonian. The matrix is real because
/// every term is a generalized Pauli plus its adjoint.
pub fn dense_spectrum(code: &CssCode) -> Result<Vec<f64>> {
    let q = code.q as usize;
    let dim = (q as f64).powi(code.n as i32);
    if dim > BRUTE_DIM_LIMIT as f64 {
        return Err(Error::SizeGuard { what: "dense Hilbert space dimension", limit: BRUTE_DIM_LIMIT, actual: dim as usize });
    }
    let n = code.n;
    let zero = vec![0; n];
    let mut h = DMatrix::<Complex64>::zeros(dim as usize, dim as usize);
    for row in code.hx.to_dense() {
        let u = pauli_matrix(q, &row, &zero);
        h -= &u + u.adjoint();
    }
    for row in code.hz.to_dense() {
        let u = pauli_matrix(q, &zero, &row);
        h -= &u + u.adjoint();
    }
    debug_assert!(h.iter().all(|c| c.im.abs() < 1e-9));
    Ok(h.map(|c| c.re).symmetric_eigen().eigenvalues.iter().copied().collect())
}

/// Thermal mean of a spectrum at inverse temperature beta.
pub fn gibbs_energy(spectrum: &[f64], beta: f64) -> f64 {
    let low = spectrum.iter().copied().fold(f64::MAX, f64::min);
    let (mut num, mut den) = (0.0, 0.0);
    for &l in spectrum {
        let w = (-beta * (l - low)).exp();
        num += l * w;
        den += w;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{hypergraph_complex, tensor_product};
    use crate::codes::extract_code;
    use crate::graphs::Graph;

    const BETAS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 5.0];

    fn small_code(q: u64) -> CssCode {
        let a = Graph::bipartite(1, 2, [(0, 1), (0, 2)]).unwrap();
        let b = Graph::bipartite(2, 1, [(0, 2), (1, 2)]).unwrap();
        let c = tensor_product(&hypergraph_complex(&a, q).unwrap(), &hypergraph_complex(&b, q).unwrap()).unwrap();
        extract_code(&c, 1).unwrap()
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(term_value(2, 0.0), 0.0);
        assert!((term_value(2, 1.0) - 2.0 * 2f64.tanh()).abs() < 1e-12);
        assert!((term_value(2, 50.0) - 2.0).abs() < 1e-12);
        let b = 1.0f64;
        let q3 = (2.0 * (2.0 * b).exp() - 2.0 * (-b).exp()) / ((2.0 * b).exp() + 2.0 * (-b).exp());
        assert!((term_value(3, b) - q3).abs() < 1e-12);
    }

    #[test]
    fn single_qutrit_dense() {
        let u = pauli_matrix(3, &[1], &[0]);
        let t = &u + u.adjoint();
        let eig = t.symmetric_eigen();
        for beta in BETAS {
            let (mut num, mut den) = (0.0, 0.0);
            for &l in eig.eigenvalues.iter() {
                num += l * (beta * l).exp();
                den += (beta * l).exp();
            }
            assert!((num / den - term_value(3, beta)).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_matches_dense_trace() {
        for q in [2, 3] {
            let code = small_code(q);
            assert_eq!(code.n, 5);
            for beta in BETAS {
                let e = thermal_energy_exact(&code, beta).unwrap().energy;
                assert!((e - thermal_energy_brute(&code, beta).unwrap()).abs() < 1e-9, "q={q} beta={beta}");
            }
        }
    }

    #[test]
    fn single_term_hamiltonian() {
        let g = Graph::bipartite(1, 1, [(0, 1)]).unwrap();
        let code = extract_code(&hypergraph_complex(&g, 2).unwrap(), 1).unwrap();
        for beta in BETAS {
            assert!((thermal_energy_brute(&code, beta).unwrap() + 2.0 * (2.0 * beta).tanh()).abs() < 1e-12);
        }
    }

    #[test]
    fn refuses_relations() {
        let code = extract_code(&crate::codes::tests::torus(3, 2), 1).unwrap();
        assert!(matches!(thermal_energy_exact(&code, 1.0), Err(Error::Redundant { .. })));
    }
}

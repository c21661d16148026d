//! CSS codes carried by a chain complex at a chosen degree.
//!
//! At degree `k` the qudits are the `k`-cells; `H_X` has the rows of
//! `d_k` (one X-type check per `(k-1)`-cell) and `H_Z` has the rows of
//! `d_{k+1}^T` (one Z-type check per `(k+1)`-cell).

mod distance;
mod entropy;
mod syndrome;

pub use distance::{distance_brute, Side};
pub use entropy::{entropy_bound, EntropyBound};
pub use syndrome::{b_prime_diagonal, syndrome_census, syndrome_gap, GapMode, SyndromeReport, EXACT_GAP_STATES};

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::chain::{hypergraph_complex, tensor_product, ChainComplex};
use crate::graphs::Graph;
use crate::modular::is_prime;
use crate::ringlin::{rank_mod_p, smith_normal_form, SparseMat};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct CssCode {
    pub q: u64,
    pub degree: usize,
    pub n: usize,
    pub hx: SparseMat,
    pub hz: SparseMat,
    pub source: Arc<ChainComplex>,
}

pub fn extract_code(c: &ChainComplex, degree: usize) -> Result<CssCode> {
    if degree > c.length() {
        return Err(Error::InvalidInput(format!("degree {degree} above the top degree {}", c.length())));
    }
    let q = c.modulus();
    let n = c.dim(degree);
    let hx = match c.boundary(degree) {
        Some(b) => b.clone(),
        None => SparseMat::zeros(0, n, q),
    };
    let hz = match c.boundary(degree + 1) {
        Some(b) => b.transpose(),
        None => SparseMat::zeros(0, n, q),
    };
    let code = CssCode { q, degree, n, hx, hz, source: Arc::new(c.clone()) };
    if !code.checks_commute()? {
        return Err(Error::NotAComplex("H_X H_Z^T != 0".into()));
    }
    Ok(code)
}

/// Hypergraph product of two check matrices given as bipartite graphs
/// (left vertices are bits, right vertices checks): the degree-1 code of the
/// product of their hypergraph complexes.
pub fn hypergraph_product(a: &Graph, b: &Graph, q: u64) -> Result<CssCode> {
    let c = tensor_product(&hypergraph_complex(a, q)?, &hypergraph_complex(b, q)?)?;
    extract_code(&c, 1)
}

impl CssCode {
    /// `H_X H_Z^T = 0 mod q`.
    pub fn checks_commute(&self) -> Result<bool> {
        Ok(self.hx.matmul(&self.hz.transpose())?.is_zero())
    }

    /// Number of cells one degree above the Z checks.
    pub fn cells_above_plaquettes(&self) -> usize {
        self.source.dim(self.degree + 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    /// Logical qudits; only for prime `q`.
    pub k: Option<usize>,
    pub rank_x: Option<usize>,
    pub rank_z: Option<usize>,
    /// Dimension of the relations among the X checks (prime `q`).
    pub redundancy_x: Option<usize>,
    pub redundancy_z: Option<usize>,
    /// Orders of the cyclic factors of the relation group among the X checks.
    pub relations_x: Vec<u64>,
    pub relations_z: Vec<u64>,
}

pub fn code_params(code: &CssCode) -> Result<CodeParams> {
    let q = code.q;
    let relations_x = relation_orders(&code.hx)?;
    let relations_z = relation_orders(&code.hz)?;
    if !is_prime(q) {
        return Ok(CodeParams {
            n: code.n,
            k: None,
            rank_x: None,
            rank_z: None,
            redundancy_x: None,
            redundancy_z: None,
            relations_x,
            relations_z,
        });
    }
    let rx = rank_mod_p(&code.hx, q)?;
    let rz = rank_mod_p(&code.hz, q)?;
    Ok(CodeParams {
        n: code.n,
        k: Some(code.n - rx - rz),
        rank_x: Some(rx),
        rank_z: Some(rz),
        redundancy_x: Some(code.hx.rows() - rx),
        redundancy_z: Some(code.hz.rows() - rz),
        relations_x,
        relations_z,
    })
}

/// The group `{v in Z_q^rows : v^T H = 0}` as cyclic orders, read off the
/// Smith form: one `Z_gcd(d_i, q)` per invariant factor and one `Z_q` per
/// zero row of the diagonal. Trivial factors are omitted.
fn relation_orders(h: &SparseMat) -> Result<Vec<u64>> {
    let q = h.modulus();
    if h.rows() == 0 {
        return Ok(Vec::new());
    }
    if is_prime(q) {
        let r = rank_mod_p(h, q)?;
        return Ok(vec![q; h.rows() - r]);
    }
    let factors = smith_normal_form(h);
    let qb = BigInt::from(q);
    let mut out: Vec<u64> = factors
        .iter()
        .map(|d| d.gcd(&qb).to_u64().expect("divides q"))
        .filter(|&g| g > 1)
        .collect();
    out.extend(std::iter::repeat_n(q, h.rows() - factors.len()));
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::chain::{betti, graph_complex, hypergraph_complex, kunneth_prediction, power, tensor_product};
    use crate::graphs::{named_graph, random_biregular};

    pub(crate) fn torus(l: usize, q: u64) -> ChainComplex {
        power(&graph_complex(&named_graph(&format!("cycle({l})")).unwrap(), q).unwrap(), 2).unwrap()
    }

    #[test]
    fn extraction_shapes() {
        let code = extract_code(&torus(3, 2), 1).unwrap();
        assert_eq!((code.n, code.hx.rows(), code.hz.rows()), (18, 9, 9));
        let q3 = extract_code(&torus(3, 3), 1).unwrap();
        assert!(q3.checks_commute().unwrap());
        let two_term = graph_complex(&named_graph("cycle(5)").unwrap(), 2).unwrap();
        let c = extract_code(&two_term, 1).unwrap();
        assert_eq!(c.hz.rows(), 0);
        assert!(extract_code(&two_term, 2).is_err());
        assert_eq!(extract_code(&two_term, 0).unwrap().hx.rows(), 0);
    }

    #[test]
    fn parameters() {
        let p = code_params(&extract_code(&torus(3, 2), 1).unwrap()).unwrap();
        assert_eq!(p.k, Some(2));
        assert_eq!((p.redundancy_x, p.redundancy_z), (Some(1), Some(1)));
        let k4sq = power(&graph_complex(&named_graph("k4").unwrap(), 2).unwrap(), 2).unwrap();
        let p = code_params(&extract_code(&k4sq, 1).unwrap()).unwrap();
        assert_eq!(p.redundancy_z, Some(9));
        assert_eq!(p.k, Some(betti(&k4sq, 2).unwrap()[1]));
    }

    #[test]
    fn hypergraph_product_matches_kunneth() {
        let a = hypergraph_complex(&random_biregular(4, 3, 3, 4, 5).unwrap(), 2).unwrap();
        let b = hypergraph_complex(&random_biregular(8, 6, 3, 4, 6).unwrap(), 2).unwrap();
        let code = extract_code(&tensor_product(&a, &b).unwrap(), 1).unwrap();
        let k = code_params(&code).unwrap().k.unwrap();
        let predicted = kunneth_prediction(&betti(&a, 2).unwrap(), &betti(&b, 2).unwrap());
        assert_eq!(k, predicted[1]);
    }

    #[test]
    fn composite_modulus_reports_relation_groups() {
        // mod 6 the torus checks have one Z_6 relation on each side
        let p = code_params(&extract_code(&torus(3, 6), 1).unwrap()).unwrap();
        assert_eq!(p.k, None);
        assert_eq!(p.relations_x, vec![6]);
        assert_eq!(p.relations_z, vec![6]);
        // the unsigned triangle has Smith form [1, 1, 2]: 2(1,1,1) is a relation mod 4
        let tri = graph_complex(&named_graph("cycle(3)").unwrap(), 2).unwrap().change_modulus(4).unwrap();
        let p = code_params(&extract_code(&tri, 1).unwrap()).unwrap();
        assert_eq!(p.relations_x, vec![2]);
    }
}

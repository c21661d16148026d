use serde::Serialize;

use crate::codes::CssCode;
use crate::modular::{self, check_prime};
use crate::ringlin::{kernel_basis_mod_p, rank_mod_p, SparseMat};
use crate::{Error, Result};

/// A symplectic operation on the qudit columns of a check tableau.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ColumnOp {
    /// SUM gate: `x_t += a x_c`, `z_c -= a z_t`.
    Sum { control: usize, target: usize, factor: u64 },
    /// Fourier (Hadamard for qubits): `(x, z) -> (-z, x)`.
    Fourier { qudit: usize },
    /// `(x, z) -> (a x, a^-1 z)`.
    Scale { qudit: usize, factor: u64 },
    Swap { a: usize, b: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct CanonicalForm {
    pub ops: Vec<ColumnOp>,
    /// X part of the transformed X checks.
    pub hx: Vec<Vec<u64>>,
    /// Z part of the transformed Z checks.
    pub hz: Vec<Vec<u64>>,
}

/// A check row as `(x, z)` exponent vectors.
pub type Row = (Vec<u64>, Vec<u64>);

fn apply(op: ColumnOp, rows: &mut [Row], q: u64) {
    for (x, z) in rows.iter_mut() {
        match op {
            ColumnOp::Sum { control, target, factor } => {
                x[target] = modular::add(x[target], modular::mul(factor, x[control], q), q);
                z[control] = modular::sub(z[control], modular::mul(factor, z[target], q), q);
            }
            ColumnOp::Fourier { qudit } => {
                let (a, b) = (x[qudit], z[qudit]);
                x[qudit] = modular::neg(b, q);
                z[qudit] = a;
            }
            ColumnOp::Scale { qudit, factor } => {
                x[qudit] = modular::mul(x[qudit], factor, q);
                z[qudit] = modular::mul(z[qudit], modular::inv(factor, q), q);
            }
            ColumnOp::Swap { a, b } => {
                x.swap(a, b);
                z.swap(a, b);
            }
        }
    }
}

/// Replay column operations on a tableau.
pub fn apply_column_ops(q: u64, rows: &[Row], ops: &[ColumnOp]) -> Vec<Row> {
    let mut rows = rows.to_vec();
    for &op in ops {
        apply(op, &mut rows, q);
    }
    rows
}

pub(crate) fn tableau(code: &CssCode) -> Vec<Row> {
    let n = code.n;
    let dense = |m: &SparseMat| m.to_dense();
    let mut rows: Vec<Row> = dense(&code.hx).into_iter().map(|x| (x, vec![0; n])).collect();
    rows.extend(dense(&code.hz).into_iter().map(|z| (vec![0; n], z)));
    rows
}

/// Reduce the X parts of `rows[range]` to unit vectors on columns
/// `first..first + len`, using only columns `first..n`.
fn reduce_block(rows: &mut [Row], range: std::ops::Range<usize>, first: usize, n: usize, q: u64, ops: &mut Vec<ColumnOp>) {
    for (k, r) in range.enumerate() {
        let col = first + k;
        let pivot = (col..n).find(|&c| rows[r].0[c] != 0).expect("rows are independent");
        let mut push = |op: ColumnOp, rows: &mut [Row]| {
            apply(op, rows, q);
            ops.push(op);
        };
        if pivot != col {
            push(ColumnOp::Swap { a: pivot, b: col }, rows);
        }
        let lead = rows[r].0[col];
        if lead != 1 {
            push(ColumnOp::Scale { qudit: col, factor: modular::inv(lead, q) }, rows);
        }
        for t in (first..n).filter(|&t| t != col) {
            let v = rows[r].0[t];
            if v != 0 {
                push(ColumnOp::Sum { control: col, target: t, factor: modular::neg(v, q) }, rows);
            }
        }
    }
}

/// Column operations turning every X check into `X` on its own qudit
/// `0..r_x` and every Z check into `Z` on its own qudit `r_x..r_x + r_z`.
///
/// Needs independent checks on both sides; otherwise the error carries a
/// relation among them.
pub fn canonical_form(code: &CssCode) -> Result<CanonicalForm> {
    let q = code.q;
    check_prime(q)?;
    for (side, m) in [("X", &code.hx), ("Z", &code.hz)] {
        if rank_mod_p(m, q)? != m.rows() {
            let witness = kernel_basis_mod_p(&m.transpose(), q)?.swap_remove(0);
            return Err(Error::Redundant { side, witness });
        }
    }
    let n = code.n;
    let rx = code.hx.rows();
    let rz = code.hz.rows();
    let mut rows = tableau(code);
    let mut ops = Vec::new();
    reduce_block(&mut rows, 0..rx, 0, n, q, &mut ops);
    for k in rx..n {
        apply(ColumnOp::Fourier { qudit: k }, &mut rows, q);
        ops.push(ColumnOp::Fourier { qudit: k });
    }
    reduce_block(&mut rows, rx..rx + rz, rx, n, q, &mut ops);
    for k in rx..rx + rz {
        apply(ColumnOp::Fourier { qudit: k }, &mut rows, q);
        ops.push(ColumnOp::Fourier { qudit: k });
    }
    Ok(CanonicalForm {
        hx: rows[..rx].iter().map(|r| r.0.clone()).collect(),
        hz: rows[rx..].iter().map(|r| r.1.clone()).collect(),
        ops,
    })
}

/// Replays the operations on the original checks and confirms the result:
/// singleton rows on distinct qudits and no leftover parts.
pub fn verify_canonical(code: &CssCode, form: &CanonicalForm) -> bool {
    let rows = apply_column_ops(code.q, &tableau(code), &form.ops);
    let rx = code.hx.rows();
    let unit = |v: &[u64], k: usize| v.iter().enumerate().all(|(j, &e)| e == u64::from(j == k));
    rows.iter().enumerate().all(|(r, (x, z))| {
        if r < rx {
            unit(x, r) && z.iter().all(|&e| e == 0) && *x == form.hx[r]
        } else {
            unit(z, r) && x.iter().all(|&e| e == 0) && *z == form.hz[r - rx]
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{hypergraph_complex, tensor_product};
    use crate::codes::extract_code;
    use crate::graphs::Graph;
    use proptest::prelude::*;

    fn symplectic(q: u64, a: &Row, b: &Row) -> u64 {
        let mut s = 0;
        for k in 0..a.0.len() {
            s = modular::add(s, modular::mul(a.0[k], b.1[k], q), q);
            s = modular::sub(s, modular::mul(a.1[k], b.0[k], q), q);
        }
        s
    }

    /// Product of an injective check `[1 1]^T` with a random surjective
    /// 2x3 check: no relations on either side, `n = 8`.
    pub(crate) fn redundancy_free(q: u64, seed: u64) -> CssCode {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = Graph::bipartite(1, 2, [(0, 1), (0, 2)]).unwrap();
        loop {
            let edges: Vec<(usize, usize)> =
                (0..3).flat_map(|l| (0..2).map(move |r| (l, 3 + r))).filter(|_| rng.random_bool(0.5)).collect();
            let Ok(b) = Graph::bipartite(3, 2, edges) else { continue };
            let hb = hypergraph_complex(&b, q).unwrap();
            if b.degrees().contains(&0) || rank_mod_p(hb.boundary(1).unwrap(), q).unwrap() < 2 {
                continue;
            }
            let c = tensor_product(&hypergraph_complex(&a, q).unwrap(), &hb).unwrap();
            return extract_code(&c, 1).unwrap();
        }
    }

    #[test]
    fn identity_block_needs_no_ops() {
        let g = Graph::bipartite(1, 1, [(0, 1)]).unwrap();
        let code = extract_code(&hypergraph_complex(&g, 2).unwrap(), 1).unwrap();
        let f = canonical_form(&code).unwrap();
        assert!(f.ops.is_empty());
        assert_eq!(f.hx, vec![vec![1]]);
    }

    #[test]
    fn eight_qubit_code() {
        for seed in 0..10 {
            let code = redundancy_free(2, seed);
            assert_eq!(code.n, 8);
            let f = canonical_form(&code).unwrap();
            assert!(verify_canonical(&code, &f));
            let rows = apply_column_ops(2, &tableau(&code), &f.ops);
            for a in &rows {
                for b in &rows {
                    assert_eq!(symplectic(2, a, b), 0);
                }
            }
        }
    }

    #[test]
    fn qutrit_code() {
        let code = redundancy_free(3, 4);
        let f = canonical_form(&code).unwrap();
        assert!(verify_canonical(&code, &f));
    }

    #[test]
    fn torus_is_refused() {
        let code = extract_code(&crate::codes::tests::torus(3, 2), 1).unwrap();
        match canonical_form(&code) {
            Err(Error::Redundant { side, witness }) => {
                assert_eq!(side, "X");
                assert!(witness.iter().all(|&w| w == 1));
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn ops_preserve_symplectic_form(ops in prop::collection::vec((0usize..4, 0usize..5, 0usize..5, 1u64..5), 0..20),
                                        x in prop::collection::vec(0u64..5, 10), z in prop::collection::vec(0u64..5, 10)) {
            let q = 5;
            let ops: Vec<ColumnOp> = ops.into_iter().filter_map(|(k, a, b, f)| match k {
                0 if a != b => Some(ColumnOp::Sum { control: a, target: b, factor: f }),
                1 => Some(ColumnOp::Fourier { qudit: a }),
                2 => Some(ColumnOp::Scale { qudit: a, factor: f }),
                3 => Some(ColumnOp::Swap { a, b }),
                _ => None,
            }).collect();
            let r1: Row = (x[..5].to_vec(), z[..5].to_vec());
            let r2: Row = (x[5..].to_vec(), z[5..].to_vec());
            let before = symplectic(q, &r1, &r2);
            let after = apply_column_ops(q, &[r1, r2], &ops);
            prop_assert_eq!(before, symplectic(q, &after[0], &after[1]));
        }
    }
}

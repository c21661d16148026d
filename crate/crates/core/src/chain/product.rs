use super::{CellLabel, ChainComplex};
use crate::modular;
use crate::ringlin::SparseMat;
use crate::{Error, Result};

/// Total complex of `C (x) C'`.
///
/// Degree `j` is the direct sum of the blocks `C_i (x) C'_{j-i}` in increasing
/// `i`; inside a block the cell `(a, b)` sits at `a * D'_{j-i} + b`. The
/// boundary acts on a block as `d_i (x) 1 + (-1)^i 1 (x) d'_{j-i}`.
pub fn tensor_product(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    if c.q != d.q {
        return Err(Error::DimensionMismatch(format!("moduli {} and {} differ", c.q, d.q)));
    }
    let q = c.q;
    let (l1, l2) = (c.length(), d.length());
    let top = l1 + l2;
    // offset[j][i] is where block (i, j - i) starts inside degree j
    let mut offsets = vec![Vec::new(); top + 1];
    let mut dims = vec![0; top + 1];
    let mut labels: Vec<Vec<CellLabel>> = vec![Vec::new(); top + 1];
    for j in 0..=top {
        offsets[j] = vec![usize::MAX; l1 + 1];
        for i in j.saturating_sub(l2)..=j.min(l1) {
            offsets[j][i] = dims[j];
            dims[j] += c.dim(i) * d.dim(j - i);
            for a in c.labels(i) {
                for b in d.labels(j - i) {
                    labels[j].push(a.concat(b));
                }
            }
        }
    }
    let mut boundaries = Vec::with_capacity(top);
    for j in 1..=top {
        let mut triples = Vec::new();
        for i in j.saturating_sub(l2)..=j.min(l1) {
            let k = j - i;
            let dk = d.dim(k);
            let src = offsets[j][i];
            if i >= 1 {
                let dst = offsets[j - 1][i - 1];
                let bd = c.boundary(i).expect("degree in range");
                for (r, col, v) in bd.triples() {
                    for b in 0..dk {
                        triples.push((dst + r * dk + b, src + col * dk + b, v as i64));
                    }
                }
            }
            if k >= 1 {
                let dst = offsets[j - 1][i];
                let bd = d.boundary(k).expect("degree in range");
                let dk1 = d.dim(k - 1);
                let sign = if i % 2 == 0 { 1 } else { modular::neg(1, q) as i64 };
                for a in 0..c.dim(i) {
                    for (r, col, v) in bd.triples() {
                        triples.push((dst + a * dk1 + r, src + a * dk + col, sign * v as i64));
                    }
                }
            }
        }
        boundaries.push(SparseMat::from_triples(dims[j - 1], dims[j], q, triples)?);
    }
    let factors = match (&c.factors, &d.factors) {
        (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
        _ => None,
    };
    ChainComplex::new(q, dims, boundaries, labels, factors)
}

/// `C x C x ... x C` (`k` copies), folded from the left.
pub fn power(c: &ChainComplex, k: usize) -> Result<ChainComplex> {
    if k == 0 {
        return Err(Error::InvalidInput("power needs k >= 1".into()));
    }
    let mut acc = c.clone();
    for _ in 1..k {
        acc = tensor_product(&acc, c)?;
    }
    Ok(acc)
}

/// Betti numbers of a product predicted from those of its factors.
pub fn kunneth_prediction(b1: &[usize], b2: &[usize]) -> Vec<usize> {
    let mut out = vec![0; b1.len() + b2.len() - 1];
    for (i, x) in b1.iter().enumerate() {
        for (j, y) in b2.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::tests::{dense_betti, gc};
    use super::super::{betti, graph_complex, hypergraph_complex};
    use super::*;
    use crate::graphs::random_biregular;

    #[test]
    fn torus_and_squares() {
        let t = power(&gc("cycle(3)", 2), 2).unwrap();
        assert_eq!(t.dims(), &[9, 18, 9]);
        assert_eq!(betti(&t, 2).unwrap(), vec![1, 2, 1]);
        let t3 = power(&gc("cycle(3)", 3), 2).unwrap();
        assert_eq!(betti(&t3, 3).unwrap(), vec![1, 2, 1]);
        assert_eq!(betti(&t3, 3).unwrap(), dense_betti(&t3, 3));
        let k4sq = power(&gc("k4", 2), 2).unwrap();
        assert_eq!(betti(&k4sq, 2).unwrap()[2], 9);
        let k4cube = power(&gc("k4", 2), 3).unwrap();
        assert_eq!(betti(&k4cube, 2).unwrap()[3], 27);
    }

    #[test]
    fn unit_and_power_one() {
        let c = gc("petersen", 3);
        let pt = ChainComplex::point(3).unwrap();
        for prod in [tensor_product(&c, &pt).unwrap(), tensor_product(&pt, &c).unwrap()] {
            assert_eq!(prod.dims(), c.dims());
            assert_eq!(betti(&prod, 3).unwrap(), betti(&c, 3).unwrap());
        }
        assert_eq!(power(&c, 1).unwrap(), c);
        assert!(power(&c, 0).is_err());
        assert!(tensor_product(&c, &gc("k4", 2)).is_err());
    }

    #[test]
    fn chain_condition_for_composite_moduli() {
        for q in [2, 3, 4, 6] {
            let c = power(&gc("k4", q), 3).unwrap();
            assert!(c.check_chain_condition().is_ok());
        }
    }

    #[test]
    fn kunneth_on_hypergraph_products() {
        let a = hypergraph_complex(&random_biregular(4, 3, 3, 4, 1).unwrap(), 2).unwrap();
        let b = hypergraph_complex(&random_biregular(8, 6, 3, 4, 2).unwrap(), 2).unwrap();
        let p = tensor_product(&a, &b).unwrap();
        let predicted = kunneth_prediction(&betti(&a, 2).unwrap(), &betti(&b, 2).unwrap());
        assert_eq!(betti(&p, 2).unwrap(), predicted);
    }

    #[test]
    fn associativity_of_dims_and_betti() {
        let a = gc("cycle(3)", 3);
        let b = gc("k4", 3);
        let c = graph_complex(&crate::graphs::named_graph("path(3)").unwrap(), 3).unwrap();
        let left = tensor_product(&tensor_product(&a, &b).unwrap(), &c).unwrap();
        let right = tensor_product(&a, &tensor_product(&b, &c).unwrap()).unwrap();
        assert_eq!(left.dims(), right.dims());
        assert_eq!(betti(&left, 3).unwrap(), betti(&right, 3).unwrap());
        // the label sets agree as well, only the order of cells differs
        for j in 0..=3 {
            let mut l: Vec<_> = left.labels(j).to_vec();
            let mut r: Vec<_> = right.labels(j).to_vec();
            l.sort();
            r.sort();
            assert_eq!(l, r);
        }
    }
}

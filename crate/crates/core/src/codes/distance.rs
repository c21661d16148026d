use serde::{Deserialize, Serialize};

use super::CssCode;
use crate::bits::{for_each_in_coset, BitVec, F2Basis};
use crate::ringlin::kernel_basis_mod_p;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    X,
    Z,
}

/// Minimum weight of a `side`-type logical operator: a vector in the kernel
/// of the opposite check matrix that is not in the span of the same-side
/// checks. Refuses when the kernel has more than `budget` elements.
pub fn distance_brute(code: &CssCode, side: Side, budget: u128) -> Result<usize> {
    if code.q != 2 {
        return Err(Error::Precondition(format!("distance needs q = 2, got {}", code.q)));
    }
    let (opposite, same) = match side {
        Side::Z => (&code.hx, &code.hz),
        Side::X => (&code.hz, &code.hx),
    };
    let kernel: Vec<BitVec> = kernel_basis_mod_p(opposite, 2)?.iter().map(|v| BitVec::from_u64s(v)).collect();
    let required = 1u128.checked_shl(kernel.len() as u32).unwrap_or(u128::MAX);
    if required > budget || kernel.len() >= 64 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let stabilizers = F2Basis::from_vectors(code.n, same.rows_as_bits().iter());
    if kernel.len() == stabilizers.dim() {
        return Err(Error::Precondition("the code has no logical operators".into()));
    }
    let mut best = usize::MAX;
    for_each_in_coset(&BitVec::zeros(code.n), &kernel, |v| {
        let w = v.weight();
        if w > 0 && w < best && !stabilizers.contains(v) {
            best = w;
        }
        true
    });
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::super::tests::torus;
    use super::super::extract_code;
    use super::*;
    use crate::chain::graph_complex;
    use crate::graphs::named_graph;

    /// Independent oracle: smallest weight `w` for which some weight-`w`
    /// vector commutes with every opposite check and is not a stabilizer.
    fn oracle(code: &CssCode, side: Side) -> usize {
        let (opp, same) = match side {
            Side::Z => (code.hx.rows_as_bits(), code.hz.rows_as_bits()),
            Side::X => (code.hz.rows_as_bits(), code.hx.rows_as_bits()),
        };
        let stab = F2Basis::from_vectors(code.n, same.iter());
        fn rec(start: usize, left: usize, v: &mut BitVec, opp: &[BitVec], stab: &F2Basis) -> bool {
            if left == 0 {
                return opp.iter().all(|r| !r.dot(v)) && !stab.contains(v);
            }
            for i in start..v.len() {
                v.flip(i);
                if rec(i + 1, left - 1, v, opp, stab) {
                    return true;
                }
                v.flip(i);
            }
            false
        }
        (1..=code.n).find(|&w| rec(0, w, &mut BitVec::zeros(code.n), &opp, &stab)).unwrap()
    }

    #[test]
    fn toric_distances() {
        let t3 = extract_code(&torus(3, 2), 1).unwrap();
        assert_eq!(distance_brute(&t3, Side::Z, 1 << 20).unwrap(), 3);
        assert_eq!(distance_brute(&t3, Side::X, 1 << 20).unwrap(), 3);
        assert_eq!(oracle(&t3, Side::Z), 3);
        let t4 = extract_code(&torus(4, 2), 1).unwrap();
        assert_eq!(distance_brute(&t4, Side::Z, 1 << 20).unwrap(), 4);
        assert!(matches!(distance_brute(&t4, Side::Z, 1000), Err(Error::BudgetExceeded { required: 131072, .. })));
    }

    #[test]
    fn cycle_repetition() {
        let c5 = extract_code(&graph_complex(&named_graph("cycle(5)").unwrap(), 2).unwrap(), 1).unwrap();
        assert_eq!(distance_brute(&c5, Side::Z, 1 << 10).unwrap(), 5);
        assert_eq!(oracle(&c5, Side::Z), 5);
    }
}

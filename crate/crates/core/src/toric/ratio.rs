use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::{for_each_in_coset, BitVec};
use crate::chain::ChainComplex;
use crate::ringlin::kernel_basis_mod_p;
use crate::{Error, Result};

/// Largest cocycle-space dimension searched exhaustively.
pub const RATIO_EXACT_DIM: usize = 24;

const ANNEAL_STEPS: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioMode {
    Exact,
    Anneal,
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioReport {
    pub delta_weight: usize,
    /// `|x + y|` for the returned cocycle `y`.
    pub min_weight: usize,
    /// `None` stands for `+inf` (`x` is itself a cocycle).
    pub ratio: Option<f64>,
    pub y: Vec<usize>,
    pub cocycle_dim: usize,
    pub exact: bool,
}

fn coboundary_weight(c: &ChainComplex, x: &BitVec) -> Result<usize> {
    match c.boundary(2) {
        None => Ok(0),
        Some(d2) => {
            let dx = d2.transpose().mul_vec(&x.to_u64s())?;
            Ok(dx.iter().filter(|&&v| v != 0).count())
        }
    }
}

fn cocycle_basis(c: &ChainComplex) -> Result<Vec<BitVec>> {
    let n = c.dim(1);
    match c.boundary(2) {
        None => Ok((0..n).map(|k| BitVec::from_indices(n, [k])).collect()),
        Some(d2) => Ok(kernel_basis_mod_p(&d2.transpose(), 2)?.iter().map(|v| BitVec::from_u64s(v)).collect()),
    }
}

fn check_input(c: &ChainComplex, x: &BitVec) -> Result<()> {
    if c.modulus() != 2 {
        return Err(Error::Precondition("the ratio is defined over q = 2".into()));
    }
    if c.length() < 1 || x.len() != c.dim(1) {
        return Err(Error::DimensionMismatch(format!("1-chain of length {} for {} 1-cells", x.len(), c.dim(1))));
    }
    Ok(())
}

fn report(delta_weight: usize, best: &BitVec, x: &BitVec, cocycle_dim: usize, exact: bool) -> RatioReport {
    let min_weight = best.weight();
    RatioReport {
        delta_weight,
        min_weight,
        ratio: (min_weight > 0).then(|| delta_weight as f64 / min_weight as f64),
        y: best.xor(x).ones().collect(),
        cocycle_dim,
        exact,
    }
}

/// `|delta x| / min_y |x + y|` over cocycles `y` (`delta y = 0`).
///
/// Exact mode enumerates the cocycle space; anneal mode is a seeded
/// Metropolis walk over it and only gives an upper bound on the minimum.
pub fn coboundary_inverse_ratio(c: &ChainComplex, x: &BitVec, mode: RatioMode, seed: u64) -> Result<RatioReport> {
    check_input(c, x)?;
    let delta = coboundary_weight(c, x)?;
    let basis = cocycle_basis(c)?;
    let dim = basis.len();
    match mode {
        RatioMode::Exact => {
            if dim > RATIO_EXACT_DIM {
                return Err(Error::SizeGuard { what: "cocycle space dimension", limit: RATIO_EXACT_DIM, actual: dim });
            }
            let mut best = x.clone();
            for_each_in_coset(x, &basis, |v| {
                if v.weight() < best.weight() {
                    best = v.clone();
                }
                !best.is_zero()
            });
            Ok(report(delta, &best, x, dim, true))
        }
        RatioMode::Anneal => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut cur = x.clone();
            let mut best = x.clone();
            if dim > 0 {
                for step in 0..ANNEAL_STEPS {
                    let temp = 2.0 * (1.0 - step as f64 / ANNEAL_STEPS as f64) + 1e-3;
                    let cand = cur.xor(&basis[rng.random_range(0..dim)]);
                    let dw = cand.weight() as f64 - cur.weight() as f64;
                    if dw <= 0.0 || rng.random::<f64>() < (-dw / temp).exp() {
                        cur = cand;
                        if cur.weight() < best.weight() {
                            best = cur.clone();
                        }
                    }
                }
            }
            Ok(report(delta, &best, x, dim, false))
        }
    }
}

/// Reference minimum by enumerating every 1-chain and keeping the cocycles.
pub fn ratio_brute_force(c: &ChainComplex, x: &BitVec) -> Result<RatioReport> {
    check_input(c, x)?;
    let n = c.dim(1);
    const LIMIT: usize = 22;
    if n > LIMIT {
        return Err(Error::SizeGuard { what: "brute-force 1-chain count", limit: LIMIT, actual: n });
    }
    if c.length() >= 2 && c.dim(2) > 64 {
        return Err(Error::SizeGuard { what: "brute-force plaquette count", limit: 64, actual: c.dim(2) });
    }
    let delta = coboundary_weight(c, x)?;
    let cols: Vec<u64> = match c.boundary(2) {
        None => vec![0; n],
        Some(d2) => (0..n).map(|e| d2.row(e).iter().fold(0u64, |acc, &(p, _)| acc | 1 << p)).collect(),
    };
    let xw = x.as_word();
    let mut best = (usize::MAX, 0u64);
    let mut dim = 0u64;
    for y in 0u64..1 << n {
        let d = (0..n).filter(|e| y >> e & 1 == 1).fold(0u64, |acc, e| acc ^ cols[e]);
        if d != 0 {
            continue;
        }
        dim += 1;
        let w = (xw ^ y).count_ones() as usize;
        if w < best.0 {
            best = (w, y);
        }
    }
    let best_vec = BitVec::from_indices(n, (0..n).filter(|e| (xw ^ best.1) >> e & 1 == 1));
    Ok(report(delta, &best_vec, x, dim.trailing_zeros() as usize, true))
}

#[cfg(test)]
mod tests {
    use super::super::tests::square;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_cell_ratio() {
        let c = square("cycle(3)", 2);
        let x = BitVec::from_indices(18, [0]);
        let r = coboundary_inverse_ratio(&c, &x, RatioMode::Exact, 0).unwrap();
        assert_eq!(r.cocycle_dim, 10);
        assert_eq!((r.delta_weight, r.min_weight), (2, 1));
        assert_eq!(r.ratio, Some(2.0));
        assert!(r.y.is_empty());
    }

    #[test]
    fn cocycle_gives_infinite_ratio() {
        let c = square("cycle(3)", 2);
        let star: Vec<usize> = c.boundary(1).unwrap().row(4).iter().map(|&(e, _)| e).collect();
        let x = BitVec::from_indices(18, star.clone());
        let r = coboundary_inverse_ratio(&c, &x, RatioMode::Exact, 0).unwrap();
        assert_eq!(r.delta_weight, 0);
        assert_eq!(r.ratio, None);
        assert_eq!(r.y, star);
    }

    #[test]
    fn anneal_is_deterministic_and_bounded() {
        let c = square("cycle(3)", 2);
        let x = BitVec::from_indices(18, [0, 3, 5, 8, 11, 12, 17]);
        let exact = coboundary_inverse_ratio(&c, &x, RatioMode::Exact, 0).unwrap();
        let a = coboundary_inverse_ratio(&c, &x, RatioMode::Anneal, 9).unwrap();
        let b = coboundary_inverse_ratio(&c, &x, RatioMode::Anneal, 9).unwrap();
        assert_eq!(a.y, b.y);
        assert!(a.min_weight >= exact.min_weight);
        assert!(!a.exact);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn exact_matches_brute_force(bits in prop::collection::vec(any::<bool>(), 18)) {
            let c = square("cycle(3)", 2);
            let x = BitVec::from_bools(&bits);
            let e = coboundary_inverse_ratio(&c, &x, RatioMode::Exact, 0).unwrap();
            let b = ratio_brute_force(&c, &x).unwrap();
            prop_assert_eq!(e.min_weight, b.min_weight);
            prop_assert_eq!(e.delta_weight, b.delta_weight);
            prop_assert_eq!(e.cocycle_dim, b.cocycle_dim);
        }
    }
}

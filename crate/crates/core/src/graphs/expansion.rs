use nalgebra::DMatrix;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::Graph;
use crate::{Error, Result};

/// Largest vertex count accepted by the exact subset enumeration.
pub const EXACT_EXPANSION_LIMIT: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionMode {
    Exact,
    Spectral,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Expansion {
    /// `min cut(S)/|S|` over `0 < |S| <= N/2`, with a minimizing set.
    Exact { value: Ratio<u64>, witness: Vec<usize> },
    /// A certified lower bound `lambda_2 / 2` on the exact value.
    SpectralLowerBound { lower_bound: f64, lambda2: f64 },
}

impl Expansion {
    /// The exact value or the bound, as a float.
    pub fn as_f64(&self) -> f64 {
        match self {
            Expansion::Exact { value, .. } => *value.numer() as f64 / *value.denom() as f64,
            Expansion::SpectralLowerBound { lower_bound, .. } => *lower_bound,
        }
    }
}

pub fn edge_expansion(g: &Graph, mode: ExpansionMode) -> Result<Expansion> {
    match mode {
        ExpansionMode::Exact => edge_expansion_exact(g).map(|(value, witness)| Expansion::Exact { value, witness }),
        ExpansionMode::Spectral => {
            let (lower_bound, lambda2) = edge_expansion_spectral(g)?;
            Ok(Expansion::SpectralLowerBound { lower_bound, lambda2 })
        }
    }
}

/// Exact edge expansion by enumerating every subset of at most `N/2`
/// vertices. Ties keep the numerically smallest bitmask.
pub fn edge_expansion_exact(g: &Graph) -> Result<(Ratio<u64>, Vec<usize>)> {
    let n = g.n();
    if n > EXACT_EXPANSION_LIMIT {
        return Err(Error::SizeGuard { what: "exact expansion vertex count", limit: EXACT_EXPANSION_LIMIT, actual: n });
    }
    if n < 2 {
        return Err(Error::InvalidInput("expansion needs at least two vertices".into()));
    }
    let masks: Vec<u32> = g
        .adjacency()
        .iter()
        .map(|a| a.iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let half = n / 2;
    let blocks = 1u64 << n.saturating_sub(10);
    let block = (1u64 << n) / blocks;
    let best = (0..blocks)
        .into_par_iter()
        .filter_map(|b| {
            let mut best: Option<(Ratio<u64>, u32)> = None;
            for s in (b * block)..((b + 1) * block) {
                let s = s as u32;
                let size = s.count_ones() as usize;
                if size == 0 || size > half {
                    continue;
                }
                let mut cut = 0u32;
                let mut rest = s;
                while rest != 0 {
                    let v = rest.trailing_zeros();
                    cut += (masks[v as usize] & !s & full).count_ones();
                    rest &= rest - 1;
                }
                let r = Ratio::new(cut as u64, size as u64);
                if best.is_none_or(|(b, _)| r < b) {
                    best = Some((r, s));
                }
            }
            best
        })
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
        .ok_or_else(|| Error::InvalidInput("no subsets".into()))?;
    let witness = (0..n).filter(|&v| best.1 >> v & 1 == 1).collect();
    Ok((best.0, witness))
}

/// Cheeger-type lower bound: `cut(S) >= lambda_2 |S| |S^c| / N >= lambda_2 |S| / 2`
/// for `|S| <= N/2`, where `lambda_2` is the second Laplacian eigenvalue.
/// The eigenvalue is shaded down by a rounding allowance before halving.
pub fn edge_expansion_spectral(g: &Graph) -> Result<(f64, f64)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidInput("expansion needs at least two vertices".into()));
    }
    let mut lap = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in g.edges() {
        lap[(u, u)] += 1.0;
        lap[(v, v)] += 1.0;
        lap[(u, v)] -= 1.0;
        lap[(v, u)] -= 1.0;
    }
    let mut eig: Vec<f64> = lap.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    let lambda2 = eig[1];
    let scale = eig.last().copied().unwrap_or(0.0).abs().max(1.0);
    let tol = 1e-9 * scale * n as f64;
    Ok((((lambda2 - tol) / 2.0).max(0.0), lambda2))
}

#[cfg(test)]
mod tests {
    use super::super::named_graph;
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: recursive include/exclude over vertices.
    fn oracle(g: &Graph) -> Ratio<u64> {
        fn go(g: &Graph, v: usize, chosen: &mut Vec<bool>, best: &mut Option<Ratio<u64>>) {
            if v == g.n() {
                let size = chosen.iter().filter(|&&c| c).count();
                if size == 0 || 2 * size > g.n() {
                    return;
                }
                let cut = g.edges().iter().filter(|&&(a, b)| chosen[a] != chosen[b]).count();
                let r = Ratio::new(cut as u64, size as u64);
                if best.is_none_or(|b| r < b) {
                    *best = Some(r);
                }
                return;
            }
            for c in [false, true] {
                chosen[v] = c;
                go(g, v + 1, chosen, best);
            }
        }
        let mut best = None;
        go(g, 0, &mut vec![false; g.n()], &mut best);
        best.unwrap()
    }

    #[test]
    fn spec_examples() {
        for (name, expect) in [("cycle(4)", 1), ("k4", 2), ("petersen", 1)] {
            let g = named_graph(name).unwrap();
            let (value, witness) = edge_expansion_exact(&g).unwrap();
            assert_eq!(value, Ratio::from_integer(expect), "{name}");
            assert!(2 * witness.len() <= g.n());
        }
        let big = named_graph("grid_torus(5)").unwrap();
        assert!(edge_expansion_exact(&big).is_err());
        assert!(edge_expansion_spectral(&big).unwrap().0 > 0.0);
    }

    #[test]
    fn spectral_is_below_exact_on_named() {
        for name in ["k4", "petersen", "heawood", "cycle(7)", "grid_torus(4)", "complete_bipartite(3,4)", "path(5)"] {
            let g = named_graph(name).unwrap();
            let exact = edge_expansion_exact(&g).unwrap().0;
            let (bound, _) = edge_expansion_spectral(&g).unwrap();
            assert!(bound <= *exact.numer() as f64 / *exact.denom() as f64, "{name}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn exact_matches_oracle(n in 2usize..=12, bits in any::<u64>(), extra in any::<u64>()) {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| (bits.rotate_left(*k as u32) ^ extra.rotate_right(*k as u32)) & 3 == 0)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::new(n, edges).unwrap();
            let exact = edge_expansion_exact(&g).unwrap().0;
            prop_assert_eq!(exact, oracle(&g));
            let (bound, _) = edge_expansion_spectral(&g).unwrap();
            prop_assert!(bound <= *exact.numer() as f64 / *exact.denom() as f64 + 1e-12);
        }
    }
}

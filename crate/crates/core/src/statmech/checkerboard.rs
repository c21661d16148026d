use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graphs::named_graph;
use crate::{Error, Result};

/// Mixture on the `L x L` torus in which each block of side about `l` is all
/// up or all down with probability 1/2, independently.
#[derive(Clone, Debug, Serialize)]
pub struct Checkerboard {
    pub side: usize,
    pub block: usize,
    /// Block lengths along one axis (the first `L mod l` blocks are one longer).
    pub block_lengths: Vec<usize>,
    pub edges: usize,
    pub cross_block_edges: usize,
    pub expected_violated: Ratio<u64>,
    /// `E - E_0` in expectation.
    pub excess_energy: Ratio<u64>,
    /// `(E - E_0) / N`.
    pub energy_density: Ratio<u64>,
    pub m_squared: Ratio<u64>,
}

fn block_lengths(side: usize, block: usize) -> Vec<usize> {
    let m = side / block;
    let extra = side % block;
    (0..m).map(|k| block + usize::from(k < extra)).collect()
}

pub fn checkerboard_state(side: usize, block: usize) -> Result<Checkerboard> {
    if side < 3 {
        return Err(Error::InvalidInput("torus side must be at least 3".into()));
    }
    if block == 0 || block > side {
        return Err(Error::InvalidInput(format!("block side {block} not in 1..={side}")));
    }
    let lens = block_lengths(side, block);
    let m = lens.len();
    let n = (side * side) as u64;
    // one boundary per block edge along each axis, unless a single block wraps
    let cross = if m >= 2 { 2 * side * m } else { 0 };
    let sum_sq: u64 = lens.iter().flat_map(|&a| lens.iter().map(move |&b| ((a * b) as u64).pow(2))).sum();
    let expected_violated = Ratio::new(cross as u64, 2);
    let excess = expected_violated * 2;
    Ok(Checkerboard {
        side,
        block,
        block_lengths: lens,
        edges: 2 * side * side,
        cross_block_edges: cross,
        expected_violated,
        excess_energy: excess,
        energy_density: excess / n,
        m_squared: Ratio::new(sum_sq, n * n),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckerboardSample {
    pub samples: usize,
    pub m_squared_mean: f64,
    pub m_squared_stderr: f64,
    pub violated_mean: f64,
    pub violated_stderr: f64,
}

fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

/// Sample block sign patterns and measure `M^2` and the violated edges on the
/// torus graph itself.
pub fn checkerboard_monte_carlo(side: usize, block: usize, samples: usize, seed: u64) -> Result<CheckerboardSample> {
    let cb = checkerboard_state(side, block)?;
    let g = named_graph(&format!("grid_torus({side})"))?;
    let mut owner = vec![0usize; side];
    let mut start = 0;
    for (k, &len) in cb.block_lengths.iter().enumerate() {
        owner[start..start + len].fill(k);
        start += len;
    }
    let m = cb.block_lengths.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m2 = Vec::with_capacity(samples);
    let mut viol = Vec::with_capacity(samples);
    let mut sigma = vec![0i8; side * side];
    for _ in 0..samples {
        let signs: Vec<i8> = (0..m * m).map(|_| if rng.random() { 1 } else { -1 }).collect();
        for x in 0..side {
            for y in 0..side {
                sigma[x * side + y] = signs[owner[x] * m + owner[y]];
            }
        }
        let total: i64 = sigma.iter().map(|&s| s as i64).sum();
        m2.push((total * total) as f64 / ((side * side) as f64).powi(2));
        viol.push(g.edges().iter().filter(|&&(u, v)| sigma[u] != sigma[v]).count() as f64);
    }
    let (m2_mean, m2_err) = mean_stderr(&m2);
    let (v_mean, v_err) = mean_stderr(&viol);
    Ok(CheckerboardSample {
        samples,
        m_squared_mean: m2_mean,
        m_squared_stderr: m2_err,
        violated_mean: v_mean,
        violated_stderr: v_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(r: Ratio<u64>) -> f64 {
        *r.numer() as f64 / *r.denom() as f64
    }

    #[test]
    fn closed_forms() {
        let a = checkerboard_state(6, 2).unwrap();
        assert_eq!(a.cross_block_edges, 36);
        assert_eq!(a.edges, 72);
        assert_eq!(a.expected_violated, Ratio::from_integer(18));
        assert_eq!(a.m_squared, Ratio::new(4, 36));
        assert_eq!(checkerboard_state(6, 3).unwrap().m_squared, Ratio::new(9, 36));
        let whole = checkerboard_state(6, 6).unwrap();
        assert_eq!(whole.m_squared, Ratio::from_integer(1));
        assert_eq!(whole.energy_density, Ratio::from_integer(0));
        assert_eq!(checkerboard_state(7, 2).unwrap().block_lengths, vec![3, 2, 2]);
    }

    #[test]
    fn sampling_agrees() {
        for (side, block) in [(6, 2), (6, 3), (7, 2), (8, 8)] {
            let cb = checkerboard_state(side, block).unwrap();
            let mc = checkerboard_monte_carlo(side, block, 20_000, 1).unwrap();
            let tol = |err: f64| 5.0 * err + 1e-12;
            assert!((mc.m_squared_mean - f(cb.m_squared)).abs() <= tol(mc.m_squared_stderr));
            assert!((mc.violated_mean - f(cb.expected_violated)).abs() <= tol(mc.violated_stderr));
        }
    }
}

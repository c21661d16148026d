//! Ising configurations on graphs, checkerboard mixtures and exact thermal
//! energies of relation-free codes.

mod checkerboard;
mod thermal;

pub use checkerboard::{checkerboard_monte_carlo, checkerboard_state, Checkerboard, CheckerboardSample};
pub use thermal::{
    dense_spectrum, gibbs_energy, term_spectrum, term_value, thermal_energy_brute, thermal_energy_exact, ThermalReport, BRUTE_DIM_LIMIT};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::graphs::{edge_expansion, Expansion, ExpansionMode, Graph, EXACT_EXPANSION_LIMIT};
use crate::{Error, Result};

/// Largest vertex count for exhaustive configuration sweeps.
pub const EXHAUSTIVE_SPIN_LIMIT: usize = 20;

fn check_spins(g: &Graph, sigma: &[i8]) -> Result<()> {
    if sigma.len() != g.n() {
        return Err(Error::DimensionMismatch(format!("{} spins for {} vertices", sigma.len(), g.n())));
    }
    if sigma.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::InvalidInput("spins must be +1 or -1".into()));
    }
    Ok(())
}

/// `-sum_{edges} s_i s_j`.
pub fn ising_energy(g: &Graph, sigma: &[i8]) -> Result<i64> {
    check_spins(g, sigma)?;
    Ok(-g.edges().iter().map(|&(u, v)| (sigma[u] * sigma[v]) as i64).sum::<i64>())
}

pub fn ground_energy(g: &Graph) -> i64 {
    -(g.num_edges() as i64)
}

/// `((N_up - N_down) / N)^2`.
pub fn m_squared(sigma: &[i8]) -> Ratio<u64> {
    let n = sigma.len() as u64;
    if n == 0 {
        return Ratio::from_integer(0);
    }
    let m = sigma.iter().map(|&s| s as i64).sum::<i64>().unsigned_abs();
    Ratio::new(m * m, n * n)
}

/// Weighted average of `m_squared` over a mixture of configurations.
pub fn m_squared_mixture(mixture: &[(Ratio<u64>, Vec<i8>)]) -> Result<Ratio<u64>> {
    let total: Ratio<u64> = mixture.iter().map(|(w, _)| *w).sum();
    if total != Ratio::from_integer(1) {
        return Err(Error::InvalidInput(format!("mixture weights sum to {total}")));
    }
    Ok(mixture.iter().map(|(w, s)| w * m_squared(s)).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    Sample { samples: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct M2Report {
    /// Expansion constant used in the bound.
    pub c: Ratio<u64>,
    pub c_exact: bool,
    pub configurations: u64,
    pub violations: u64,
    /// Smallest `M^2 - (1 - 2(E - E_0)/(cN))`.
    pub tightest_slack: f64,
    pub tightest_config: Vec<i8>,
}

/// `M^2 - 1 + 2(E - E_0)/(cN)` as an exact rational.
fn slack(g: &Graph, sigma: &[i8], c: Ratio<u64>) -> Ratio<i128> {
    let n = g.n() as i128;
    let m2 = m_squared(sigma);
    let m2 = Ratio::new(*m2.numer() as i128, *m2.denom() as i128);
    let de = (ising_energy(g, sigma).expect("checked") - ground_energy(g)) as i128;
    let c = Ratio::new(*c.numer() as i128, *c.denom() as i128);
    m2 - 1 + Ratio::from_integer(2 * de) / (c * n)
}

fn config(n: usize, bits: u64) -> Vec<i8> {
    (0..n).map(|k| if bits >> k & 1 == 1 { -1 } else { 1 }).collect()
}

/// Check `M^2 >= 1 - 2(E - E_0)/(cN)` over every (or a seeded sample of)
/// spin configuration, with `c` the exact edge expansion (or the spectral
/// lower bound, rounded down, beyond the exact limit).
pub fn verify_m2_bound(g: &Graph, mode: SweepMode, seed: u64) -> Result<M2Report> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    let (c, c_exact) = if n <= EXACT_EXPANSION_LIMIT {
        match edge_expansion(g, ExpansionMode::Exact)? {
            Expansion::Exact { value, .. } => (value, true),
            _ => unreachable!(),
        }
    } else {
        let lb = edge_expansion(g, ExpansionMode::Spectral)?.as_f64();
        (Ratio::new((lb * 1e6).floor().max(0.0) as u64, 1_000_000), false)
    };
    if c == Ratio::from_integer(0) {
        return Err(Error::Precondition("expansion constant is zero".into()));
    }
    let best = |a: (Ratio<i128>, u64, u64), b: (Ratio<i128>, u64, u64)| {
        let keep = if a.0 <= b.0 { a.1 } else { b.1 };
        (a.0.min(b.0), keep, a.2 + b.2)
    };
    let (min_slack, violations, count, wit_cfg) = match mode {
        SweepMode::Exhaustive => {
            if n > EXHAUSTIVE_SPIN_LIMIT {
                return Err(Error::SizeGuard { what: "exhaustive spin count", limit: EXHAUSTIVE_SPIN_LIMIT, actual: n });
            }
            let total = 1u64 << n;
            let (s, w, v) = (0..total)
                .into_par_iter()
                .map(|bits| {
                    let s = slack(g, &config(n, bits), c);
                    (s, bits, u64::from(s < Ratio::from_integer(0)))
                })
                .reduce(|| (Ratio::from_integer(i128::MAX), 0, 0), best);
            (s, v, total, config(n, w))
        }
        SweepMode::Sample { samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut acc = (Ratio::from_integer(i128::MAX), 0u64, 0u64);
            let mut wit = vec![1; n];
            for _ in 0..samples {
                let sigma: Vec<i8> = (0..n).map(|_| if rng.random() { 1 } else { -1 }).collect();
                let s = slack(g, &sigma, c);
                if s < acc.0 {
                    wit = sigma.clone();
                }
                acc = best(acc, (s, 0, u64::from(s < Ratio::from_integer(0))));
            }
            (acc.0, acc.2, samples as u64, wit)
        }
    };
    Ok(M2Report {
        c,
        c_exact,
        configurations: count,
        violations,
        tightest_slack: *min_slack.numer() as f64 / *min_slack.denom() as f64,
        tightest_config: wit_cfg,
    })
}

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::CssCode;
use crate::bits::BitVec;
use crate::chain::betti;
use crate::ringlin::{kernel_basis_mod_p, rank_mod_p};
use crate::{Error, Result};

/// Largest number of syndrome cosets the exact gap search will visit.
pub const EXACT_GAP_STATES: usize = 1 << 24;

/// Subsets examined per candidate in search mode before settling for a bound.
const SEARCH_COMBOS: u64 = 200_000;
const SEARCH_STEPS: usize = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapMode {
    Exact,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyndromeReport {
    /// Number of plaquettes (Z checks).
    pub n_p: usize,
    /// `N_p - rank H_Z`.
    pub b2: usize,
    pub rank_hz: usize,
    /// The achievable syndromes number `2^achievable_log2`.
    pub achievable_log2: usize,
    pub achievable_count: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap_vector: Option<Vec<u8>>,
    /// Hamming distance from `gap_vector` to the achievable syndromes; a
    /// lower bound when `exact` is false.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap_distance: Option<usize>,
    /// `-N_p + 2 gap_distance`, the smallest diagonal value of the sign-flipped
    /// plaquette Hamiltonian (an upper bound when `exact` is false).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_eigenvalue: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
}

fn require_binary(code: &CssCode) -> Result<()> {
    if code.q != 2 {
        return Err(Error::Precondition(format!("syndrome counting needs q = 2, got {}", code.q)));
    }
    Ok(())
}

/// Count achievable plaquette syndromes: the image of `H_Z`, of size
/// `2^rank H_Z = 2^(N_p - b_2)`.
pub fn syndrome_census(code: &CssCode) -> Result<SyndromeReport> {
    require_binary(code)?;
    let above = code.cells_above_plaquettes();
    if above != 0 {
        return Err(Error::Precondition(format!(
            "the complex has {above} cells of degree {}; plaquette relations then include more than b_2",
            code.degree + 2
        )));
    }
    let n_p = code.hz.rows();
    let rank_hz = rank_mod_p(&code.hz, 2)?;
    let b2 = n_p - rank_hz;
    let homology = betti(&code.source, 2)?;
    if homology.get(code.degree + 1).copied().unwrap_or(0) != b2 {
        return Err(Error::NotAComplex("b_2 disagrees with the plaquette rank deficiency".into()));
    }
    Ok(SyndromeReport {
        n_p,
        b2,
        rank_hz,
        achievable_log2: rank_hz,
        achievable_count: 1u128.checked_shl(rank_hz as u32),
        gap_vector: None,
        gap_distance: None,
        min_eigenvalue: None,
        exact: None,
    })
}

/// Find a plaquette sign pattern far from every achievable syndrome.
///
/// Exact mode runs a breadth-first search over the cosets of the achievable
/// code, so the result is its covering radius with a witness. Search mode
/// climbs from a seeded random pattern; every candidate's distance is
/// computed by enumerating error weights in increasing order, and the report
/// carries a certified lower bound.
pub fn syndrome_gap(code: &CssCode, mode: GapMode, seed: u64) -> Result<SyndromeReport> {
    let mut report = syndrome_census(code)?;
    let n_p = report.n_p;
    // rows of `checks` span the dual of the achievable code
    let checks: Vec<BitVec> = kernel_basis_mod_p(&code.hz.transpose(), 2)?
        .iter()
        .map(|v| BitVec::from_u64s(v))
        .collect();
    let b = checks.len();
    let columns: Vec<BitVec> = (0..n_p)
        .map(|i| BitVec::from_indices(b, (0..b).filter(|&k| checks[k].get(i))))
        .collect();
    let (v, d, exact) = match mode {
        GapMode::Exact => {
            if b >= 63 || (1usize << b) > EXACT_GAP_STATES {
                return Err(Error::SizeGuard { what: "exact gap cosets (use search mode)", limit: EXACT_GAP_STATES, actual: 1usize.checked_shl(b as u32).unwrap_or(usize::MAX) });
            }
            let (v, d) = covering_radius(&columns, b, n_p);
            (v, d, true)
        }
        GapMode::Search => {
            let (v, d) = search(&columns, b, n_p, seed);
            (v, d, false)
        }
    };
    report.gap_vector = Some(v.to_u64s().into_iter().map(|x| x as u8).collect());
    report.gap_distance = Some(d);
    report.min_eigenvalue = Some(2 * d as i64 - n_p as i64);
    report.exact = Some(exact);
    Ok(report)
}

/// BFS over syndromes `P v`; returns a deepest coset's leader and its weight.
fn covering_radius(columns: &[BitVec], b: usize, n_p: usize) -> (BitVec, usize) {
    let cols: Vec<u64> = columns.iter().map(BitVec::as_word).collect();
    let states = 1usize << b;
    let mut dist = vec![u8::MAX; states];
    let mut via = vec![(0u32, 0u32); states];
    dist[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    let mut last = 0;
    while let Some(s) = queue.pop_front() {
        last = s;
        for (i, &c) in cols.iter().enumerate() {
            let t = s ^ c as usize;
            if dist[t] == u8::MAX {
                dist[t] = dist[s] + 1;
                via[t] = (s as u32, i as u32);
                queue.push_back(t);
            }
        }
    }
    let mut v = BitVec::zeros(n_p);
    let mut s = last;
    while s != 0 {
        let (prev, i) = via[s];
        v.flip(i as usize);
        s = prev as usize;
    }
    (v, dist[last] as usize)
}

/// Weight of the lightest column subset with the given syndrome, or a lower
/// bound once `budget` subsets have been tried.
fn coset_weight(columns: &[BitVec], target: &BitVec, budget: u64) -> (usize, bool) {
    if target.is_zero() {
        return (0, true);
    }
    let mut used = 0u64;
    for w in 1..=columns.len() {
        let mut idx: Vec<usize> = (0..w).collect();
        loop {
            used += 1;
            if used > budget {
                return (w, false);
            }
            let mut acc = target.clone();
            for &i in &idx {
                acc.xor_assign(&columns[i]);
            }
            if acc.is_zero() {
                return (w, true);
            }
            // next combination
            let mut k = w;
            while k > 0 && idx[k - 1] == columns.len() - w + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..w {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    (columns.len(), true)
}

fn search(columns: &[BitVec], b: usize, n_p: usize, seed: u64) -> (BitVec, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let syndrome = |v: &BitVec| -> BitVec {
        let mut s = BitVec::zeros(b);
        for i in v.ones() {
            s.xor_assign(&columns[i]);
        }
        s
    };
    let mut v = BitVec::from_indices(n_p, (0..n_p).filter(|_| rng.random_bool(0.5)));
    let (mut d, _) = coset_weight(columns, &syndrome(&v), SEARCH_COMBOS);
    let (mut best_v, mut best_d) = (v.clone(), d);
    for _ in 0..SEARCH_STEPS {
        let mut cand = v.clone();
        cand.flip(rng.random_range(0..n_p));
        let (cd, _) = coset_weight(columns, &syndrome(&cand), SEARCH_COMBOS);
        if cd >= d {
            v = cand;
            d = cd;
            if d > best_d {
                best_d = d;
                best_v = v.clone();
            }
        }
    }
    (best_v, best_d)
}

/// Diagonal entry of `B' = -sum_p (-1)^{v_p} B_p` on the configuration `xi`
/// of the qudits, summed term by term.
pub fn b_prime_diagonal(code: &CssCode, v: &BitVec, xi: &BitVec) -> Result<i64> {
    require_binary(code)?;
    let mut total = 0i64;
    for p in 0..code.hz.rows() {
        let flips = code.hz.row(p).iter().filter(|&&(e, _)| xi.get(e)).count() + v.get(p) as usize;
        total += if flips.is_multiple_of(2) { -1 } else { 1 };
    }
    Ok(total)
}

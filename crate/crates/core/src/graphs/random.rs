use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{girth, Graph};
use crate::{Error, Result};

/// Restarts allowed before a generator gives up.
pub const MAX_RETRIES: usize = 10_000;

/// Random simple connected `d`-regular graph on `n` vertices with girth at
/// least `min_girth`, from the pairing model.
///
/// Points are paired one at a time; a partner that would create a loop, a
/// repeated edge or a cycle shorter than `min_girth` is skipped, and a dead end
/// restarts the whole pairing.
pub fn random_regular(n: usize, d: usize, min_girth: usize, seed: u64) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(Error::InvalidInput(format!("n*d = {n}*{d} is odd")));
    }
    if d < 3 || d >= n {
        return Err(Error::InvalidInput(format!("degree {d} needs 3 <= d < n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        if let Some(edges) = try_pairing(n, d, min_girth, &mut rng) {
            let g = Graph::new(n, edges)?;
            if g.is_connected() && girth(&g).is_none_or(|len| len >= min_girth) {
                return Ok(g);
            }
        }
    }
    Err(Error::RetryExhausted {
        what: "regular graph",
        attempts: MAX_RETRIES,
        params: format!("n={n}, d={d}, min_girth={min_girth}"),
    })
}

fn try_pairing(n: usize, d: usize, min_girth: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(n * d / 2);
    while let Some(last) = points.len().checked_sub(1) {
        let i = rng.random_range(0..=last);
        points.swap(i, last);
        let u = points.pop()?;
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.shuffle(rng);
        let j = order.into_iter().find(|&j| {
            let v = points[j];
            v != u && !adj[u].contains(&v) && !closes_short_cycle(&adj, u, v, min_girth)
        })?;
        let v = points.swap_remove(j);
        adj[u].push(v);
        adj[v].push(u);
        edges.push((u, v));
    }
    Some(edges)
}

/// Whether `u` and `v` are already joined by a path of fewer than
/// `min_girth - 1` edges.
fn closes_short_cycle(adj: &[Vec<usize>], u: usize, v: usize, min_girth: usize) -> bool {
    if min_girth <= 3 {
        return false;
    }
    let limit = min_girth - 2;
    let mut frontier = vec![u];
    let mut seen = vec![u];
    for _ in 0..limit {
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in &adj[x] {
                if y == v {
                    return true;
                }
                if !seen.contains(&y) {
                    seen.push(y);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    false
}

/// Random simple bipartite graph with left vertices `0..n_left` of degree
/// `d_left` and right vertices of degree `d_right`.
pub fn random_biregular(n_left: usize, n_right: usize, d_left: usize, d_right: usize, seed: u64) -> Result<Graph> {
    if n_left * d_left != n_right * d_right {
        return Err(Error::InvalidInput(format!(
            "degree sums differ: {n_left}*{d_left} != {n_right}*{d_right}"
        )));
    }
    if d_left > n_right || d_right > n_left {
        return Err(Error::InvalidInput("degree exceeds the opposite side".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'retry: for _ in 0..MAX_RETRIES {
        let mut right: Vec<usize> = (0..n_right).flat_map(|v| std::iter::repeat_n(v, d_right)).collect();
        right.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(n_left * d_left);
        for u in 0..n_left {
            let mut mine: Vec<usize> = Vec::with_capacity(d_left);
            for _ in 0..d_left {
                let Some(j) = right.iter().position(|r| !mine.contains(r)) else {
                    continue 'retry;
                };
                mine.push(right.swap_remove(j));
            }
            edges.extend(mine.into_iter().map(|r| (u, n_left + r)));
            right.shuffle(&mut rng);
        }
        return Graph::bipartite(n_left, n_right, edges);
    }
    Err(Error::RetryExhausted {
        what: "biregular graph",
        attempts: MAX_RETRIES,
        params: format!("{n_left}x{n_right}, degrees {d_left}/{d_right}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_examples() {
        let g = random_regular(10, 3, 5, 1).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        assert_eq!(girth(&g), Some(5));
        let k4 = random_regular(4, 3, 3, 9).unwrap();
        assert_eq!(k4.num_edges(), 6);
        assert!(random_regular(5, 3, 3, 1).is_err());
        assert_eq!(random_regular(20, 3, 5, 4).unwrap(), random_regular(20, 3, 5, 4).unwrap());
    }

    #[test]
    fn impossible_girth_exhausts() {
        // K4 is the only cubic graph on 4 vertices and has girth 3
        match random_regular(4, 3, 4, 0) {
            Err(Error::RetryExhausted { params, .. }) => assert!(params.contains("min_girth=4")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn girth_holds_over_seeds() {
        for seed in 0..100 {
            let g = random_regular(24, 3, 5, seed).unwrap();
            assert!(girth(&g).unwrap() >= 5);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn biregular_examples() {
        let g = random_biregular(4, 4, 3, 3, 2).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 3));
        let g = random_biregular(2, 3, 3, 2, 2).unwrap();
        assert_eq!(g.degrees(), vec![3, 3, 2, 2, 2]);
        assert!(random_biregular(2, 3, 2, 2, 2).is_err());
        assert_eq!(random_biregular(6, 8, 4, 3, 5).unwrap(), random_biregular(6, 8, 4, 3, 5).unwrap());
    }
}

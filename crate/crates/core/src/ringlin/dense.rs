//! Textbook dense routines used as reference oracles for the sparse code.

use crate::modular;

/// Row echelon form in place; returns the pivot columns.
fn echelon(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows).find(|&k| !m[k][c].is_multiple_of(p)) else {
            continue;
        };
        m.swap(r, k);
        let inv = modular::inv(m[r][c] % p, p);
        for x in m[r].iter_mut() {
            *x = modular::mul(*x % p, inv, p);
        }
        for k in 0..rows {
            if k != r && !m[k][c].is_multiple_of(p) {
                let f = m[k][c] % p;
                for j in 0..cols {
                    let sub = modular::mul(f, m[r][j], p);
                    m[k][j] = modular::sub(m[k][j] % p, sub, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &[Vec<u64>], p: u64) -> usize {
    let mut m = m.to_vec();
    echelon(&mut m, p).len()
}

/// Null space basis from the reduced row echelon form.
pub fn kernel(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = m.to_vec();
    let pivots = echelon(&mut m, p);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut x = vec![0; cols];
            x[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = modular::neg(m[r][f] % p, p);
            }
            x
        })
        .collect()
}

fn in_column_span(m: &[Vec<u64>], cols: &[usize], b: &[u64], p: u64) -> bool {
    let base: Vec<Vec<u64>> = m.iter().map(|row| cols.iter().map(|&c| row[c]).collect()).collect();
    let aug: Vec<Vec<u64>> = base.iter().zip(b).map(|(row, &v)| {
        let mut row = row.clone();
        row.push(v % p);
        row
    }).collect();
    rank(&base, p) == rank(&aug, p)
}

/// Lexicographically smallest solution of `m x = b`, fixed one coordinate at
/// a time by testing solvability of the remainder.
pub fn solve_lex_min(m: &[Vec<u64>], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut rhs: Vec<u64> = b.iter().map(|v| v % p).collect();
    let all: Vec<usize> = (0..cols).collect();
    if !in_column_span(m, &all, &rhs, p) {
        return None;
    }
    let mut x = vec![0; cols];
    for j in 0..cols {
        let later: Vec<usize> = (j + 1..cols).collect();
        let t = (0..p).find(|&t| {
            let r: Vec<u64> = rhs
                .iter()
                .zip(m)
                .map(|(&v, row)| modular::sub(v, modular::mul(row[j] % p, t, p), p))
                .collect();
            in_column_span(m, &later, &r, p)
        })?;
        x[j] = t;
        for (v, row) in rhs.iter_mut().zip(m) {
            *v = modular::sub(*v, modular::mul(row[j] % p, t, p), p);
        }
    }
    Some(x)
}

/// Invariant factors of an integer matrix by the textbook algorithm.
pub fn smith_invariants(m: &[Vec<i128>]) -> Vec<i128> {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let mut done = true;
        for i in t + 1..rows {
            let f = a[i][t] / a[t][t];
            for j in t..cols {
                a[i][j] -= f * a[t][j];
            }
            done &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let f = a[t][j] / a[t][t];
            for row in a.iter_mut().skip(t) {
                row[j] -= f * row[t];
            }
            done &= a[t][j] == 0;
        }
        if !done {
            continue;
        }
        // enforce divisibility by folding an offending row into row t
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % a[t][t] != 0)) {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_sanity() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1]];
        assert_eq!(rank(&m, 2), 2);
        assert_eq!(kernel(&m, 3, 2), vec![vec![1, 1, 1]]);
        assert_eq!(solve_lex_min(&[vec![1, 1]], &[1], 2), Some(vec![0, 1]));
        assert_eq!(smith_invariants(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }
}

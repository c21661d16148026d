use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rank_mod_p, IntMat, Lift, SparseMat};
use crate::Result;

/// Primes whose maximal rank stands in for the rational rank of large matrices.
pub const RATIONAL_PRIMES: [u64; 7] = [2, 3, 5, 7, 11, 13, 10007];

/// Matrices up to this size get their rational rank from the Smith form.
const SNF_RANK_LIMIT: usize = 200;

/// Invariant factors of the canonical integer lift (entries `0..q`).
pub fn smith_normal_form(m: &SparseMat) -> Vec<BigInt> {
    smith_normal_form_int(&m.lift(Lift::Canonical))
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix.
pub fn smith_normal_form_int(m: &IntMat) -> Vec<BigInt> {
    let (units, rest) = unit_phase(m);
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_snf(rest));
    out
}

/// Rank over `Q`.
pub fn rational_rank(m: &IntMat) -> Result<usize> {
    if m.rows <= SNF_RANK_LIMIT && m.cols <= SNF_RANK_LIMIT {
        return Ok(smith_normal_form_int(m).len());
    }
    let mut best = 0;
    for p in RATIONAL_PRIMES {
        best = best.max(rank_mod_p(&m.reduce(p)?, p)?);
    }
    Ok(best)
}

type Row = Vec<(usize, i64)>;

/// Eliminate on entries `+-1` while they last; returns the number of unit
/// pivots and the remaining block as a dense matrix.
fn unit_phase(m: &IntMat) -> (usize, Vec<Vec<BigInt>>) {
    let mut rows: Vec<Row> = vec![Vec::new(); m.rows];
    for &(r, c, v) in &m.entries {
        rows[r].push((c, v));
    }
    for row in rows.iter_mut() {
        row.sort_unstable_by_key(|e| e.0);
        let mut merged: Row = Vec::with_capacity(row.len());
        for &(c, v) in row.iter() {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        *row = merged;
    }
    let mut col_rows = vec![BTreeSet::new(); m.cols];
    let mut active = BTreeSet::new();
    for (r, row) in rows.iter().enumerate() {
        if !row.is_empty() {
            active.insert((row.len(), r));
        }
        for &(c, _) in row {
            col_rows[c].insert(r);
        }
    }
    let mut units = 0;
    'outer: loop {
        let pivot = active.iter().find_map(|&(_, r)| {
            rows[r]
                .iter()
                .filter(|e| e.1.abs() == 1)
                .min_by_key(|e| (col_rows[e.0].len(), e.0))
                .map(|e| (r, e.0, e.1))
        });
        let Some((pr, pc, pv)) = pivot else { break };
        let targets: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
        let mut updates = Vec::with_capacity(targets.len());
        for &r in &targets {
            let v = rows[r].iter().find(|e| e.0 == pc).map_or(0, |e| e.1);
            match combine(&rows[r], -(v * pv), &rows[pr]) {
                Some(new) => updates.push((r, new)),
                None => break 'outer,
            }
        }
        let prow = std::mem::take(&mut rows[pr]);
        active.remove(&(prow.len(), pr));
        for &(c, _) in &prow {
            col_rows[c].remove(&pr);
        }
        for (r, new) in updates {
            let old = std::mem::replace(&mut rows[r], new);
            active.remove(&(old.len(), r));
            for &(c, _) in &prow {
                let had = old.binary_search_by_key(&c, |e| e.0).is_ok();
                let has = rows[r].binary_search_by_key(&c, |e| e.0).is_ok();
                if had && !has {
                    col_rows[c].remove(&r);
                } else if has && !had {
                    col_rows[c].insert(r);
                }
            }
            if !rows[r].is_empty() {
                active.insert((rows[r].len(), r));
            }
        }
        units += 1;
    }
    let live_cols: Vec<usize> = (0..m.cols).filter(|&c| !col_rows[c].is_empty()).collect();
    let mut index = vec![usize::MAX; m.cols];
    for (i, &c) in live_cols.iter().enumerate() {
        index[c] = i;
    }
    let rest = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut d = vec![BigInt::zero(); live_cols.len()];
            for &(c, v) in r {
                d[index[c]] = BigInt::from(v);
            }
            d
        })
        .collect();
    (units, rest)
}

/// `y + a x`, or `None` on `i64` overflow.
fn combine(y: &[(usize, i64)], a: i64, x: &[(usize, i64)]) -> Option<Row> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let (c, v) = if j >= x.len() || (i < y.len() && y[i].0 < x[j].0) {
            i += 1;
            (y[i - 1].0, y[i - 1].1 as i128)
        } else if i >= y.len() || x[j].0 < y[i].0 {
            j += 1;
            (x[j - 1].0, a as i128 * x[j - 1].1 as i128)
        } else {
            i += 1;
            j += 1;
            (y[i - 1].0, y[i - 1].1 as i128 + a as i128 * x[j - 1].1 as i128)
        };
        if v != 0 {
            out.push((c, i64::try_from(v).ok()?));
        }
    }
    Some(out)
}

fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
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
            if a[i][t].is_zero() {
                continue;
            }
            let f = a[i][t].div_floor(&a[t][t]);
            for j in t..cols {
                let d = &f * &a[t][j];
                a[i][j] -= d;
            }
            done &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let f = a[t][j].div_floor(&a[t][t]);
            for row in a.iter_mut().skip(t) {
                let d = &f * &row[t];
                row[j] -= d;
            }
            done &= a[t][j].is_zero();
        }
        if !done {
            continue;
        }
        let offending = (t + 1..rows)
            .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
        if let Some(i) = offending {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
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
    use super::super::dense;
    use super::super::tests::c4_incidence;
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(smith_normal_form(&SparseMat::identity(2, 5)), big(&[1, 1]));
        let two = SparseMat::from_triples(1, 1, 5, [(0, 0, 2)]).unwrap();
        assert_eq!(smith_normal_form(&two), big(&[2]));
        let signed = c4_incidence(3);
        // orient each edge: -1 at the tail
        let oriented = SparseMat::from_triples(
            4,
            4,
            3,
            signed.triples().map(|(r, c, v)| (r, c, if r == c { -(v as i64) } else { v as i64 })),
        )
        .unwrap();
        assert_eq!(smith_normal_form_int(&oriented.lift(Lift::Symmetric)), big(&[1, 1, 1]));
        assert_eq!(smith_normal_form(&c4_incidence(3)), big(&[1, 1, 1]));
    }

    #[test]
    fn odd_cycle_unsigned_incidence_has_factor_two() {
        let t = (0..3).flat_map(|e| [(e, e, 1), ((e + 1) % 3, e, 1)]);
        let m = IntMat::new(3, 3, t.collect()).unwrap();
        assert_eq!(smith_normal_form_int(&m), big(&[1, 1, 2]));
        assert_eq!(rational_rank(&m).unwrap(), 3);
    }

    proptest! {
        #[test]
        fn agrees_with_textbook(d in prop::collection::vec(prop::collection::vec(-3i64..=3, 1..7), 1..7)) {
            let cols = d.iter().map(Vec::len).min().unwrap();
            let d: Vec<Vec<i64>> = d.into_iter().map(|r| r[..cols].to_vec()).collect();
            let entries = d.iter().enumerate().flat_map(|(r, row)| {
                row.iter().enumerate().filter(|e| *e.1 != 0).map(move |(c, &v)| (r, c, v))
            }).collect();
            let m = IntMat::new(d.len(), cols, entries).unwrap();
            let wide: Vec<Vec<i128>> = d.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
            let expect: Vec<BigInt> = dense::smith_invariants(&wide).into_iter().map(BigInt::from).collect();
            let got = smith_normal_form_int(&m);
            prop_assert_eq!(&got, &expect);
            for w in got.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            // rank mod p counts the factors p does not divide
            for p in [2u64, 3, 5] {
                let expect_rank = got.iter().filter(|f| !f.is_multiple_of(&BigInt::from(p))).count();
                prop_assert_eq!(rank_mod_p(&m.reduce(p).unwrap(), p).unwrap(), expect_rank);
            }
        }
    }
}

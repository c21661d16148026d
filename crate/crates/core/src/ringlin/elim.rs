use std::collections::{BTreeSet, HashMap};

use super::{axpy, SparseMat, SparseVec};
use crate::modular::{self, check_prime};
use crate::{Error, Result};

/// Rows whose length equals the current minimum that are scanned for a pivot.
const MARKOWITZ_ROWS: usize = 4;

struct Eliminator {
    p: u64,
    rows: Vec<SparseVec>,
    active: BTreeSet<(usize, usize)>,
    col_rows: Vec<BTreeSet<usize>>,
}

/// Pivot rows of the forward elimination, in pivot order.
struct Factor {
    pivots: Vec<(usize, SparseVec)>,
}

impl Eliminator {
    fn new(m: &SparseMat, p: u64) -> Result<Self> {
        let m = m.with_modulus(p)?;
        let mut col_rows = vec![BTreeSet::new(); m.cols()];
        let mut active = BTreeSet::new();
        for (r, row) in m.data().iter().enumerate() {
            if !row.is_empty() {
                active.insert((row.len(), r));
            }
            for &(c, _) in row {
                col_rows[c].insert(r);
            }
        }
        Ok(Self { p, rows: m.data().to_vec(), active, col_rows })
    }

    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let &(min_len, _) = self.active.first()?;
        let mut best: Option<(usize, usize, usize)> = None;
        for &(len, r) in self.active.iter().take(MARKOWITZ_ROWS) {
            if len != min_len {
                break;
            }
            for &(c, _) in &self.rows[r] {
                let cost = (len - 1) * (self.col_rows[c].len() - 1);
                let cand = (cost, r, c);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    fn run(mut self) -> Factor {
        let p = self.p;
        let mut pivots = Vec::new();
        while let Some((pr, pc)) = self.choose_pivot() {
            let prow = std::mem::take(&mut self.rows[pr]);
            self.active.remove(&(prow.len(), pr));
            for &(c, _) in &prow {
                self.col_rows[c].remove(&pr);
            }
            let pv = prow.iter().find(|e| e.0 == pc).map(|e| e.1).unwrap_or(0);
            let pinv = modular::inv(pv, p);
            let targets: Vec<usize> = self.col_rows[pc].iter().copied().collect();
            for r in targets {
                let old = std::mem::take(&mut self.rows[r]);
                let v = old.iter().find(|e| e.0 == pc).map(|e| e.1).unwrap_or(0);
                let f = modular::neg(modular::mul(v, pinv, p), p);
                let new = axpy(&old, f, &prow, p);
                self.active.remove(&(old.len(), r));
                // only columns of the pivot row can change
                for &(c, _) in &prow {
                    let had = old.binary_search_by_key(&c, |e| e.0).is_ok();
                    let has = new.binary_search_by_key(&c, |e| e.0).is_ok();
                    if had && !has {
                        self.col_rows[c].remove(&r);
                    } else if has && !had {
                        self.col_rows[c].insert(r);
                    }
                }
                if !new.is_empty() {
                    self.active.insert((new.len(), r));
                }
                self.rows[r] = new;
            }
            pivots.push((pc, prow));
        }
        Factor { pivots }
    }
}

/// Rank of `m` over `F_p`, entries lifted to `0..q` and reduced mod `p`.
pub fn rank_mod_p(m: &SparseMat, p: u64) -> Result<usize> {
    check_prime(p)?;
    Ok(Eliminator::new(m, p)?.run().pivots.len())
}

/// A basis of the right kernel `{x : m x = 0}` over `F_p`, one vector per
/// non-pivot column, in increasing order of that column.
pub fn kernel_basis_mod_p(m: &SparseMat, p: u64) -> Result<Vec<Vec<u64>>> {
    check_prime(p)?;
    let factor = Eliminator::new(m, p)?.run();
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for (c, _) in &factor.pivots {
        is_pivot[*c] = true;
    }
    let pivot_vals: Vec<u64> = factor
        .pivots
        .iter()
        .map(|(pc, row)| row.iter().find(|e| e.0 == *pc).map(|e| e.1).unwrap_or(0))
        .collect();
    let mut basis = Vec::with_capacity(n - factor.pivots.len());
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut x = vec![0u64; n];
        x[f] = 1;
        // each pivot row only involves its own pivot and later pivots or free columns
        for ((pc, row), &pv) in factor.pivots.iter().zip(&pivot_vals).rev() {
            let s = row
                .iter()
                .filter(|e| e.0 != *pc)
                .fold(0, |s, &(c, v)| modular::add(s, modular::mul(v, x[c], p), p));
            if s != 0 {
                x[*pc] = modular::mul(modular::neg(s, p), modular::inv(pv, p), p);
            }
        }
        basis.push(x);
    }
    Ok(basis)
}

/// Solve `m x = b` over `F_p`, returning the lexicographically smallest
/// solution, or `None` when `b` is outside the column space.
pub fn solve_mod_p(m: &SparseMat, b: &[u64], p: u64) -> Result<Option<Vec<u64>>> {
    check_prime(p)?;
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let mt = m.with_modulus(p)?.transpose();
    let mut basis = ColumnBasis::new(p);
    // Columns that are independent of all later columns carry the solution;
    // every other coordinate can be zero, which makes the result lex-smallest.
    for j in (0..m.cols()).rev() {
        basis.insert(mt.row(j).to_vec(), vec![(j, 1)]);
    }
    let rhs: SparseVec = b
        .iter()
        .enumerate()
        .filter_map(|(i, &v)| (v % p != 0).then_some((i, v % p)))
        .collect();
    let (rest, combo) = basis.reduce(rhs, Vec::new(), true);
    if !rest.is_empty() {
        return Ok(None);
    }
    let mut x = vec![0; m.cols()];
    for (c, v) in combo {
        x[c] = v;
    }
    Ok(Some(x))
}

/// Echelon basis of column vectors, each tagged with the combination of
/// original columns that produced it.
struct ColumnBasis {
    p: u64,
    lead: HashMap<usize, usize>,
    vecs: Vec<(SparseVec, SparseVec)>,
}

impl ColumnBasis {
    fn new(p: u64) -> Self {
        Self { p, lead: HashMap::new(), vecs: Vec::new() }
    }

    /// Returns the reduced vector and the updated combination. With
    /// `accumulate` the combination collects what was removed, otherwise it
    /// is kept in sync with the vector.
    fn reduce(&self, mut v: SparseVec, mut combo: SparseVec, accumulate: bool) -> (SparseVec, SparseVec) {
        let p = self.p;
        let mut i = 0;
        while i < v.len() {
            let (r, val) = v[i];
            if let Some(&k) = self.lead.get(&r) {
                let (bv, bc) = &self.vecs[k];
                v = axpy(&v, modular::neg(val, p), bv, p);
                let coef = if accumulate { val } else { modular::neg(val, p) };
                combo = axpy(&combo, coef, bc, p);
            } else {
                i += 1;
            }
        }
        (v, combo)
    }

    fn insert(&mut self, v: SparseVec, combo: SparseVec) -> bool {
        let (v, combo) = self.reduce(v, combo, false);
        let Some(&(lead, lv)) = v.first() else {
            return false;
        };
        let s = modular::inv(lv, self.p);
        let scale = |x: SparseVec| -> SparseVec {
            x.into_iter().map(|(i, a)| (i, modular::mul(a, s, self.p))).collect()
        };
        let (v, combo) = (scale(v), scale(combo));
        self.lead.insert(lead, self.vecs.len());
        self.vecs.push((v, combo));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::super::dense;
    use super::super::tests::c4_incidence;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spec_examples() {
        assert_eq!(rank_mod_p(&SparseMat::zeros(3, 3, 2), 2).unwrap(), 0);
        assert_eq!(rank_mod_p(&SparseMat::identity(4, 3), 3).unwrap(), 4);
        assert_eq!(rank_mod_p(&c4_incidence(2), 2).unwrap(), 3);
        assert!(rank_mod_p(&c4_incidence(2), 4).is_err());

        assert!(kernel_basis_mod_p(&SparseMat::identity(3, 2), 2).unwrap().is_empty());
        assert_eq!(kernel_basis_mod_p(&c4_incidence(2), 2).unwrap(), vec![vec![1, 1, 1, 1]]);
        let row = SparseMat::from_triples(1, 2, 2, [(0, 0, 1), (0, 1, 1)]).unwrap();
        assert_eq!(kernel_basis_mod_p(&row, 2).unwrap(), vec![vec![1, 1]]);

        let id = SparseMat::identity(3, 5);
        assert_eq!(solve_mod_p(&id, &[4, 0, 2], 5).unwrap(), Some(vec![4, 0, 2]));
        assert_eq!(solve_mod_p(&row, &[1], 2).unwrap(), Some(vec![0, 1]));
        // coboundary of C4: the sum of all entries of an image vector is even
        let cob = c4_incidence(2).transpose();
        assert_eq!(solve_mod_p(&cob, &[1, 0, 0, 0], 2).unwrap(), None);
        assert!(solve_mod_p(&cob, &[1, 0], 2).is_err());
    }

    #[test]
    fn composite_entries_reduce_through_canonical_lift() {
        // [[2,3],[0,4]] mod 6 reads as [[0,1],[0,0]] mod 2 and [[2,0],[0,1]] mod 3
        let m = SparseMat::from_triples(2, 2, 6, [(0, 0, 2), (1, 1, 4), (0, 1, 3)]).unwrap();
        assert_eq!(rank_mod_p(&m, 2).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 2);
    }

    fn small_matrix() -> impl Strategy<Value = (Vec<Vec<u64>>, usize, u64)> {
        (1usize..=12, 1usize..=12, prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]))
            .prop_flat_map(|(r, c, p)| {
                let cell = prop_oneof![3 => Just(0u64), 2 => 0..p];
                (prop::collection::vec(prop::collection::vec(cell, c), r), Just(c), Just(p))
            })
    }

    proptest! {
        #[test]
        fn rank_plus_nullity((d, c, p) in small_matrix()) {
            let m = SparseMat::from_dense(&d, c, p).unwrap();
            let rank = rank_mod_p(&m, p).unwrap();
            let ker = kernel_basis_mod_p(&m, p).unwrap();
            prop_assert_eq!(rank + ker.len(), c);
            for x in &ker {
                prop_assert!(m.mul_vec(x).unwrap().iter().all(|&v| v == 0));
            }
        }

        #[test]
        fn agrees_with_dense_oracle((d, c, p) in small_matrix(), seed in any::<u64>()) {
            let m = SparseMat::from_dense(&d, c, p).unwrap();
            prop_assert_eq!(rank_mod_p(&m, p).unwrap(), dense::rank(&d, p));
            let ker = kernel_basis_mod_p(&m, p).unwrap();
            prop_assert_eq!(dense::rank(&ker, p), ker.len());
            // right-hand side inside the column space half of the time
            let b: Vec<u64> = if seed % 2 == 0 {
                let x: Vec<u64> = (0..c).map(|i| (seed >> (i % 60)) % p).collect();
                m.mul_vec(&x).unwrap()
            } else {
                (0..d.len()).map(|i| (seed >> (i % 60)) % p).collect()
            };
            prop_assert_eq!(solve_mod_p(&m, &b, p).unwrap(), dense::solve_lex_min(&d, &b, p));
        }
    }
}

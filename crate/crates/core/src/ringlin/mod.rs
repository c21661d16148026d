//! Exact sparse linear algebra over `Z_q` and `F_p`.
//!
//! [`SparseMat`] stores a row-major list of sorted `(col, value)` pairs with
//! values reduced into `1..q`. Ranks and kernels use Markowitz elimination with
//! a lexicographic tie-break, so every result is a deterministic function of
//! the input. [`smith_normal_form`] works over the integers through an explicit
//! lift of the entries.

pub mod dense;
mod elim;
mod io;
mod snf;

pub use elim::{kernel_basis_mod_p, rank_mod_p, solve_mod_p};
pub use io::{read_triples, write_triples};
pub use snf::{rational_rank, smith_normal_form, smith_normal_form_int, RATIONAL_PRIMES};

use crate::bits::BitVec;
use crate::modular::{self, check_modulus};
use crate::{Error, Result};

pub type SparseVec = Vec<(usize, u64)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    q: u64,
    data: Vec<SparseVec>,
}

/// How `Z_q` entries are lifted to integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    /// Representatives `0..q`.
    Canonical,
    /// Representatives in `(-q/2, q/2]`, so `q - 1` becomes `-1`.
    Symmetric,
}

/// A sparse integer matrix, the domain of [`smith_normal_form_int`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<(usize, usize, i64)>) -> Result<Self> {
        for &(r, c, _) in &entries {
            if r >= rows || c >= cols {
                return Err(Error::InvalidInput(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
        }
        Ok(Self { rows, cols, entries })
    }

    /// Reduce every entry modulo `q`.
    pub fn reduce(&self, q: u64) -> Result<SparseMat> {
        SparseMat::from_triples(self.rows, self.cols, q, self.entries.iter().copied())
    }

    pub fn matmul(&self, other: &IntMat) -> Result<IntMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); other.rows];
        for &(r, c, v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut acc = std::collections::BTreeMap::new();
        for &(r, k, v) in &self.entries {
            for &(c, w) in &by_row[k] {
                let e: &mut i64 = acc.entry((r, c)).or_default();
                *e = e
                    .checked_add(v.checked_mul(w).ok_or_else(overflow)?)
                    .ok_or_else(overflow)?;
            }
        }
        let entries = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Ok(IntMat { rows: self.rows, cols: other.cols, entries })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.2 == 0)
    }
}

fn overflow() -> Error {
    Error::InvalidInput("integer overflow in matrix product".into())
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize, q: u64) -> Self {
        Self { rows, cols, q, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize, q: u64) -> Self {
        Self { rows: n, cols: n, q, data: (0..n).map(|i| vec![(i, 1 % q)]).collect() }
    }

    /// Build from `(row, col, value)` triples. Values are reduced mod `q`,
    /// repeated positions are summed and zeros dropped.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        q: u64,
        triples: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        check_modulus(q)?;
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        for (r, c, v) in triples {
            if r >= rows || c >= cols {
                return Err(Error::InvalidInput(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            data[r].push((c, modular::reduce_i64(v, q)));
        }
        for row in data.iter_mut() {
            row.sort_unstable_by_key(|e| e.0);
            let mut merged: SparseVec = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 = modular::add(last.1, v, q),
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            *row = merged;
        }
        Ok(Self { rows, cols, q, data })
    }

    /// Strict constructor for external data: rejects duplicates, zeros and
    /// unreduced values.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        q: u64,
        entries: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        check_modulus(q)?;
        let mut seen = std::collections::HashSet::new();
        let mut triples = Vec::new();
        for (r, c, v) in entries {
            if v == 0 || v >= q {
                return Err(Error::InvalidInput(format!(
                    "entry ({r}, {c}) has value {v}, expected 1..{q}"
                )));
            }
            if !seen.insert((r, c)) {
                return Err(Error::InvalidInput(format!("duplicate entry ({r}, {c})")));
            }
            triples.push((r, c, v as i64));
        }
        Self::from_triples(rows, cols, q, triples)
    }

    pub fn from_dense(dense: &[Vec<u64>], cols: usize, q: u64) -> Result<Self> {
        let triples = dense.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(c, &v)| (r, c, (v % q) as i64))
        });
        Self::from_triples(dense.len(), cols, q, triples)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, u64)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        let row = &self.data[r];
        row.binary_search_by_key(&c, |e| e.0).map(|i| row[i].1).unwrap_or(0)
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMat {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.triples() {
            data[c].push((r, v));
        }
        SparseMat { rows: self.cols, cols: self.rows, q: self.q, data }
    }

    /// Column `c` as a sparse vector over the rows.
    pub fn column(&self, c: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                row.binary_search_by_key(&c, |e| e.0).ok().map(|i| (r, row[i].1))
            })
            .collect()
    }

    pub fn matmul(&self, other: &SparseMat) -> Result<SparseMat> {
        if self.cols != other.rows || self.q != other.q {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} (mod {}) times {}x{} (mod {})",
                self.rows, self.cols, self.q, other.rows, other.cols, other.q
            )));
        }
        let q = self.q;
        let mut acc = vec![0u64; other.cols];
        let mut touched = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for &(k, v) in row {
                for &(c, w) in &other.data[k] {
                    if acc[c] == 0 {
                        touched.push(c);
                    }
                    // zero after wrap-around is fine: the column stays in `touched`
                    acc[c] = modular::add(acc[c], modular::mul(v, w, q), q);
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for &c in &touched {
                if acc[c] != 0 {
                    out.push((c, acc[c]));
                }
                acc[c] = 0;
            }
            touched.clear();
            data.push(out);
        }
        Ok(SparseMat { rows: self.rows, cols: other.cols, q, data })
    }

    pub fn mul_vec(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.cols
            )));
        }
        let q = self.q;
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(0, |s, &(c, v)| modular::add(s, modular::mul(v, x[c] % q, q), q))
            })
            .collect())
    }

    /// Same matrix read in `Z_p` through the canonical lift `0..q`.
    pub fn with_modulus(&self, p: u64) -> Result<SparseMat> {
        if p == self.q {
            return Ok(self.clone());
        }
        SparseMat::from_triples(
            self.rows,
            self.cols,
            p,
            self.triples().map(|(r, c, v)| (r, c, v as i64)),
        )
    }

    pub fn lift(&self, lift: Lift) -> IntMat {
        let q = self.q;
        let entries = self
            .triples()
            .map(|(r, c, v)| match lift {
                Lift::Canonical => (r, c, v as i64),
                Lift::Symmetric => (r, c, modular::symmetric(v, q)),
            })
            .collect();
        IntMat { rows: self.rows, cols: self.cols, entries }
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.triples() {
            out[r][c] = v;
        }
        out
    }

    /// Submatrix on the given rows and columns, renumbered in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMat {
        let mut col_map = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = new;
        }
        let data = rows
            .iter()
            .map(|&r| {
                let mut row: SparseVec = self.data[r]
                    .iter()
                    .filter(|e| col_map[e.0] != usize::MAX)
                    .map(|&(c, v)| (col_map[c], v))
                    .collect();
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect();
        SparseMat { rows: rows.len(), cols: cols.len(), q: self.q, data }
    }

    /// Row `r` as a bit vector; entries read mod 2.
    pub fn row_bits(&self, r: usize) -> BitVec {
        BitVec::from_indices(
            self.cols,
            self.data[r].iter().filter(|e| e.1 % 2 == 1).map(|e| e.0),
        )
    }

    pub fn rows_as_bits(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row_bits(r)).collect()
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &SparseMat) -> Result<SparseMat> {
        if self.q != other.q {
            return Err(Error::DimensionMismatch("moduli differ".into()));
        }
        let q = self.q;
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for a in &self.data {
            for b in &other.data {
                let mut row = Vec::with_capacity(a.len() * b.len());
                for &(ca, va) in a {
                    for &(cb, vb) in b {
                        row.push((ca * other.cols + cb, modular::mul(va, vb, q)));
                    }
                }
                data.push(row);
            }
        }
        Ok(SparseMat { rows: self.rows * other.rows, cols: self.cols * other.cols, q, data })
    }

    pub(crate) fn data(&self) -> &[SparseVec] {
        &self.data
    }
}

/// `y + a * x` for sorted sparse vectors over `Z_q`.
pub(crate) fn axpy(y: &[(usize, u64)], a: u64, x: &[(usize, u64)], q: u64) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i]);
            i += 1;
        } else if take_x {
            let v = modular::mul(a, x[j].1, q);
            if v != 0 {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = modular::add(y[i].1, modular::mul(a, x[j].1, q), q);
            if v != 0 {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

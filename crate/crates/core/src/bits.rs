//! Packed vectors over `F_2` and an incremental reduced basis.
//!
//! Used by the exhaustive searches (code distance, covering radius, coset
//! leaders) where the dimension is small but the number of vectors is large.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    /// Entries taken mod 2.
    pub fn from_u64s(vals: &[u64]) -> Self {
        Self::from_indices(vals.len(), vals.iter().enumerate().filter(|(_, &b)| b % 2 == 1).map(|(i, _)| i))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over `F_2`.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn hamming(&self, other: &BitVec) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn to_u64s(&self) -> Vec<u64> {
        (0..self.len).map(|i| self.get(i) as u64).collect()
    }

    /// The vector as a single word; only valid for `len <= 64`.
    pub fn as_word(&self) -> u64 {
        debug_assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Row-reduced basis of a subspace of `F_2^n`, keyed by leading bit.
#[derive(Clone, Debug)]
pub struct F2Basis {
    len: usize,
    // (pivot, vector) with every vector zero at the pivots of the others
    rows: Vec<(usize, BitVec)>,
}

impl F2Basis {
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new() }
    }

    pub fn from_vectors<'a>(len: usize, vs: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut b = Self::new(len);
        for v in vs {
            b.insert(v.clone());
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    /// Reduce `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (p, r) in &self.rows {
            if v.get(*p) {
                v.xor_assign(r);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Returns `true` when `v` enlarged the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let v = self.reduce(&v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for (_, r) in self.rows.iter_mut() {
            if r.get(p) {
                r.xor_assign(&v);
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn vectors(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.iter().map(|(_, v)| v)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }
}

/// Visit every vector `offset + span(basis)` in Gray-code order.
///
/// The callback returns `false` to stop early.
pub fn for_each_in_coset(offset: &BitVec, basis: &[BitVec], mut f: impl FnMut(&BitVec) -> bool) {
    let mut cur = offset.clone();
    if !f(&cur) {
        return;
    }
    let k = basis.len();
    assert!(k < 64, "span too large to enumerate");
    for i in 1u64..(1u64 << k) {
        cur.xor_assign(&basis[i.trailing_zeros() as usize]);
        if !f(&cur) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = BitVec::from_indices(70, [0, 3, 65]);
        let b = BitVec::from_indices(70, [3, 69]);
        assert_eq!(a.weight(), 3);
        assert!(a.dot(&b));
        assert_eq!(a.xor(&b).ones().collect::<Vec<_>>(), vec![0, 65, 69]);
        assert_eq!(a.hamming(&b), 3);
        assert_eq!(b.first_one(), Some(3));
    }

    #[test]
    fn basis_membership() {
        let vs = [
            BitVec::from_indices(5, [0, 1]),
            BitVec::from_indices(5, [1, 2]),
            BitVec::from_indices(5, [0, 2]),
        ];
        let basis = F2Basis::from_vectors(5, vs.iter());
        assert_eq!(basis.dim(), 2);
        assert!(basis.contains(&BitVec::from_indices(5, [0, 2])));
        assert!(!basis.contains(&BitVec::from_indices(5, [0])));
    }

    #[test]
    fn coset_enumeration_visits_everything() {
        let basis = vec![BitVec::from_indices(4, [0]), BitVec::from_indices(4, [1, 2])];
        let mut seen = Vec::new();
        for_each_in_coset(&BitVec::from_indices(4, [3]), &basis, |v| {
            seen.push(v.clone());
            true
        });
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 4);
        assert!(seen.iter().all(|v| v.get(3)));
    }
}

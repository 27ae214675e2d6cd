//! Linear algebra over the two-element field.
//!
//! Vectors are packed into `u64` words. Every reduction picks the lowest
//! available row and the lowest column first, so results are reproducible.

use std::fmt;

const W: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(W)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_ones<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_ones(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
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
        self.words[i / W] >> (i % W) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % W);
        if b {
            self.words[i / W] |= mask;
        } else {
            self.words[i / W] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / W] ^= 1u64 << (i % W);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// XOR `other` into `self` starting at bit `offset`.
    pub fn xor_at(&mut self, offset: usize, other: &BitVec) {
        assert!(offset + other.len <= self.len);
        for i in other.ones() {
            self.flip(offset + i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    /// Lowest set bit with index `>= start`.
    pub fn lowest_one_from(&self, start: usize) -> Option<usize> {
        if start >= self.len {
            return None;
        }
        let mut wi = start / W;
        let mut w = self.words[wi] & (!0u64 << (start % W));
        loop {
            if w != 0 {
                return Some(wi * W + w.trailing_zeros() as usize);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.lowest_one_from(0)
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones { v: self, wi: 0, cur: self.words.first().copied().unwrap_or(0) }
    }

    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len);
        let mut out = BitVec::zeros(len);
        for i in self.ones_in(start, start + len) {
            out.flip(i - start);
        }
        out
    }

    /// Set bits with index in `lo..hi`.
    pub fn ones_in(&self, lo: usize, hi: usize) -> impl Iterator<Item = usize> + '_ {
        let mut next = lo;
        std::iter::from_fn(move || {
            let i = self.lowest_one_from(next)?;
            if i >= hi {
                return None;
            }
            next = i + 1;
            Some(i)
        })
    }

    pub fn concat(parts: &[&BitVec]) -> BitVec {
        let len = parts.iter().map(|p| p.len).sum();
        let mut out = BitVec::zeros(len);
        let mut off = 0;
        for p in parts {
            out.xor_at(off, p);
            off += p.len;
        }
        out
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "[{s}]")
    }
}

pub struct Ones<'a> {
    v: &'a BitVec,
    wi: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.wi * W + t);
            }
            self.wi += 1;
            if self.wi >= self.v.words.len() {
                return None;
            }
            self.cur = self.v.words[self.wi];
        }
    }
}

/// Dense matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { cols, rows: vec![BitVec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { cols, rows }
    }

    /// Build from column vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.rows[i].set(j, b)
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_ones(self.nrows(), (0..self.nrows()).filter(|&i| self.get(i, j)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.cols);
        BitVec::from_bools(&self.rows.iter().map(|r| r.dot(x)).collect::<Vec<_>>())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Matrix { cols: other.cols, rows }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols));
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.xor_assign(b);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.nrows() {
                break;
            }
            let Some(p) = (r..m.nrows()).find(|&i| m.rows[i].get(c)) else {
                continue;
            };
            m.rows.swap(r, p);
            let pivot = m.rows[r].clone();
            for i in 0..m.nrows() {
                if i != r && m.rows[i].get(c) {
                    m.rows[i].xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.rows.clone();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..m.len()).find(|&i| m[i].get(c)) else {
                continue;
            };
            m.swap(r, p);
            let pivot = m[r].clone();
            for row in m.iter_mut().skip(r + 1) {
                if row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            r += 1;
            if r == m.len() {
                break;
            }
        }
        r
    }

    /// Some `x` with `self * x = b`; free variables are set to zero.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.nrows(), "right-hand side has wrong length");
        let mut aug = Matrix::zeros(self.nrows(), self.cols + 1);
        for i in 0..self.nrows() {
            aug.rows[i].xor_at(0, &self.rows[i]);
            aug.set(i, self.cols, b.get(i));
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            x.set(c, red.get(r, self.cols));
        }
        Some(x)
    }

    /// Basis of the null space, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<BitVec> {
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (r, &c) in pivots.iter().enumerate() {
                    if red.get(r, f) {
                        v.set(c, true);
                    }
                }
                v
            })
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.nrows() == self.cols && self.rank() == self.cols
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Incrementally built row-echelon basis of a subspace.
///
/// Each stored row has a distinct pivot, its lowest set bit. Every row carries
/// a tag recording which inserted generators it is a combination of.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    tag_len: usize,
    pivot_row: Vec<u32>,
    rows: Vec<BitVec>,
    tags: Vec<BitVec>,
}

const NONE: u32 = u32::MAX;

impl Echelon {
    pub fn new(dim: usize, tag_len: usize) -> Self {
        Echelon { dim, tag_len, pivot_row: vec![NONE; dim], rows: Vec::new(), tags: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn tags(&self) -> &[BitVec] {
        &self.tags
    }

    /// Reduce `v` in place, accumulating tags. Returns the first pivot that
    /// could not be cleared, or `None` if `v` reduced to zero.
    pub fn reduce(&self, v: &mut BitVec, tag: &mut BitVec) -> Option<usize> {
        let mut start = 0;
        while let Some(p) = v.lowest_one_from(start) {
            let r = self.pivot_row[p];
            if r == NONE {
                return Some(p);
            }
            v.xor_assign(&self.rows[r as usize]);
            tag.xor_assign(&self.tags[r as usize]);
            start = p + 1;
        }
        None
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        let mut t = BitVec::zeros(self.tag_len);
        self.reduce(&mut v, &mut t).is_none()
    }

    /// Insert `v` with the given tag. On dependence returns the reduced tag,
    /// i.e. a combination of generators summing to zero.
    pub fn insert(&mut self, mut v: BitVec, mut tag: BitVec) -> Result<usize, BitVec> {
        assert_eq!(v.len(), self.dim);
        assert_eq!(tag.len(), self.tag_len);
        match self.reduce(&mut v, &mut tag) {
            None => Err(tag),
            Some(p) => {
                self.pivot_row[p] = self.rows.len() as u32;
                self.rows.push(v);
                self.tags.push(tag);
                Ok(self.rows.len() - 1)
            }
        }
    }

    /// Tag of `v` as a combination of generators, if `v` lies in the span.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let mut v = v.clone();
        let mut t = BitVec::zeros(self.tag_len);
        match self.reduce(&mut v, &mut t) {
            None => Some(t),
            Some(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitvec_basics() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.lowest_one_from(1), Some(64));
        assert_eq!(v.lowest_one_from(65), Some(129));
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.slice(60, 10).ones().collect::<Vec<_>>(), vec![4]);
        assert_eq!(v.ones_in(1, 129).collect::<Vec<_>>(), vec![64]);
    }

    #[test]
    fn small_ranks() {
        assert_eq!(Matrix::identity(2).rank(), 2);
        assert_eq!(Matrix::from_fn(2, 2, |_, _| true).rank(), 1);
        assert_eq!(Matrix::zeros(3, 0).rank(), 0);
    }

    #[test]
    fn small_solves() {
        let x = Matrix::identity(2).solve(&BitVec::from_bools(&[true, false])).unwrap();
        assert_eq!(x.to_bools(), vec![true, false]);
        assert!(Matrix::zeros(1, 1).solve(&BitVec::unit(1, 0)).is_none());
    }

    #[test]
    fn echelon_dependence() {
        let mut e = Echelon::new(3, 3);
        let a = BitVec::from_bools(&[true, true, false]);
        let b = BitVec::from_bools(&[false, true, true]);
        let c = BitVec::from_bools(&[true, false, true]);
        assert!(e.insert(a, BitVec::unit(3, 0)).is_ok());
        assert!(e.insert(b, BitVec::unit(3, 1)).is_ok());
        let rel = e.insert(c, BitVec::unit(3, 2)).unwrap_err();
        assert_eq!(rel.to_bools(), vec![true, true, true]);
    }
}

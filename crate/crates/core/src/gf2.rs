//! Dense linear algebra over GF(2).
//!
//! Vectors are packed 64 coordinates per word. Coordinate `i` lives in word
//! `i / 64` at bit `i % 64`. Matrices are stored column-major because every
//! matroid in this crate is a set of columns; row-oriented algorithms build
//! their own row view.

use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};

/// Longest vector supported by the packed representation.
pub const MAX_LEN: usize = 4096;

/// A vector over GF(2).
///
/// The derived ordering compares packed words first, which gives the
/// deterministic "lexicographic by packed words" order used for every
/// enumeration in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_LEN, "vector length {len} exceeds {MAX_LEN}");
        Self { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    /// Low `len` bits of `value`, bit `i` of the integer giving coordinate `i`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = value & mask;
        }
        v
    }

    /// Inverse of [`BitVec::from_u64`]; `None` when the vector is longer than 64.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Parses a bitstring; the leftmost character is coordinate 0.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > MAX_LEN {
            return Err(Error::Argument(format!("bitstring longer than {MAX_LEN}")));
        }
        let mut v = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Argument(format!("invalid bit character {other:?}")));
                }
            }
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of set coordinates.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Coordinatewise XOR; fails on length mismatch.
    pub fn checked_add(&self, other: &BitVec) -> Result<BitVec> {
        if self.len != other.len {
            return Err(Error::Dimension { expected: self.len, found: other.len });
        }
        let mut out = self.clone();
        out.xor_with(other);
        Ok(out)
    }

    /// In-place XOR. Panics on length mismatch.
    pub fn xor_with(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "GF(2) vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// Coordinates `i` with a set bit, ascending.
    pub fn ones(&self) -> Ones<'_> {
        Ones { words: &self.words, word: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "GF(2) vector length mismatch");
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2
            == 1
    }

    /// True when every set coordinate of `self` is set in `other`.
    pub fn is_subset(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "GF(2) vector length mismatch");
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "GF(2) vector length mismatch");
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len, other.len, "GF(2) vector length mismatch");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        BitVec { words, len: self.len }
    }

    /// `self` with the coordinates of `other` cleared.
    pub fn and_not(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len, other.len, "GF(2) vector length mismatch");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        BitVec { words, len: self.len }
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Coordinates `range` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        assert!(start <= end && end <= self.len);
        BitVec::from_indices(end - start, self.ones().filter(|&i| i >= start && i < end).map(|i| i - start))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl Add for &BitVec {
    type Output = BitVec;

    fn add(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_with(rhs);
        out
    }
}

impl Add for BitVec {
    type Output = BitVec;

    fn add(mut self, rhs: BitVec) -> BitVec {
        self.xor_with(&rhs);
        self
    }
}

impl AddAssign<&BitVec> for BitVec {
    fn add_assign(&mut self, rhs: &BitVec) {
        self.xor_with(rhs);
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

/// An incremental echelon basis of a subspace.
///
/// Every stored vector has a distinct leading coordinate (its lowest set
/// bit) that is clear in all other stored vectors. Each stored vector also
/// remembers which inserted vectors it is the sum of, so membership queries
/// can return coordinates with respect to the inserted generators.
#[derive(Clone, Debug)]
pub struct XorBasis {
    len: usize,
    rows: Vec<(usize, BitVec, BitVec)>,
    inserted: usize,
    capacity: usize,
}

impl XorBasis {
    /// `capacity` bounds the number of generators that can be tracked.
    pub fn new(len: usize, capacity: usize) -> Self {
        Self { len, rows: Vec::new(), inserted: 0, capacity }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v`, returning the residual and the generator combination
    /// that was subtracted.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        assert_eq!(v.len(), self.len, "GF(2) vector length mismatch");
        let mut residual = v.clone();
        let mut combo = BitVec::zeros(self.capacity);
        for (lead, row, tag) in &self.rows {
            if residual.get(*lead) {
                residual.xor_with(row);
                combo.xor_with(tag);
            }
        }
        (residual, combo)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Generator combination summing to `v`, if `v` is in the span.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let (residual, combo) = self.reduce(v);
        residual.is_zero().then_some(combo)
    }

    /// Inserts the next generator. Returns false (and stores nothing) when
    /// it is already in the span; the generator index still advances.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert!(self.inserted < self.capacity, "XorBasis capacity exhausted");
        let (residual, mut combo) = self.reduce(v);
        combo.flip(self.inserted);
        self.inserted += 1;
        let Some(lead) = residual.first_one() else {
            return false;
        };
        // keep the basis fully reduced so `reduce` is a single pass
        for (_, row, tag) in &mut self.rows {
            if row.get(lead) {
                row.xor_with(&residual);
                tag.xor_with(&combo);
            }
        }
        self.rows.push((lead, residual, combo));
        self.rows.sort_by_key(|(l, _, _)| *l);
        true
    }
}

/// Reduced row echelon form with pivot data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    pub rref: BitMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// A matrix over GF(2), stored as columns of equal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    columns: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, columns: vec![BitVec::zeros(rows); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, columns: (0..n).map(|i| BitVec::unit(n, i)).collect() }
    }

    pub fn from_columns(rows: usize, columns: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::Dimension { expected: rows, found: bad.len() });
        }
        Ok(Self { rows, columns })
    }

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension { expected: cols, found: bad.len() });
        }
        let mut columns = vec![BitVec::zeros(rows.len()); cols];
        for (r, row) in rows.iter().enumerate() {
            for c in row.ones() {
                columns[c].set(r, true);
            }
        }
        Ok(Self { rows: rows.len(), columns })
    }

    /// Parses rows written as bitstrings.
    pub fn from_row_strings(rows: &[&str]) -> Result<Self> {
        let parsed = rows.iter().map(|r| BitVec::parse(r)).collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BitVec::len);
        Self::from_rows(cols, &parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &BitVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[BitVec] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.columns[c].get(r)
    }

    /// Row `r` as a vector indexed by column.
    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_indices(self.cols(), (0..self.cols()).filter(|&c| self.columns[c].get(r)))
    }

    pub fn row_vectors(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix { rows: self.cols(), columns: self.row_vectors() }
    }

    /// `A·x` for `x` indexed by column.
    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols() {
            return Err(Error::Dimension { expected: self.cols(), found: x.len() });
        }
        let mut out = BitVec::zeros(self.rows);
        for c in x.ones() {
            out.xor_with(&self.columns[c]);
        }
        Ok(out)
    }

    /// `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        let columns = other.columns.iter().map(|c| self.mul_vec(c)).collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix { rows: self.rows, columns })
    }

    /// Gaussian elimination to reduced row echelon form.
    pub fn row_reduce(&self) -> RowEchelon {
        let mut rows = self.row_vectors();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols() {
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_with(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        let rref = BitMatrix::from_rows(self.cols(), &rows).expect("row lengths are uniform");
        RowEchelon { rank: pivots.len(), rref, pivots }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    /// All vectors of the row space, each once, in Gray-code order over the
    /// nonzero rows of the reduced form.
    pub fn row_space(&self, max_rank: u32) -> Result<RowSpace> {
        let ech = self.row_reduce();
        if ech.rank > max_rank as usize {
            return Err(Error::Capacity {
                what: "row space enumeration",
                needed: format!("2^{}", ech.rank),
                cap: format!("2^{max_rank}"),
            });
        }
        let generators = (0..ech.rank).map(|r| ech.rref.row(r)).collect();
        Ok(RowSpace::new(self.cols(), generators))
    }

    /// A basis of `{x : A·x = 0}`, one vector per free column.
    pub fn null_space_basis(&self) -> Vec<BitVec> {
        let ech = self.row_reduce();
        let mut pivot_row = vec![None; self.cols()];
        for (r, &p) in ech.pivots.iter().enumerate() {
            pivot_row[p] = Some(r);
        }
        (0..self.cols())
            .filter(|&c| pivot_row[c].is_none())
            .map(|free| {
                let mut x = BitVec::unit(self.cols(), free);
                for (r, &p) in ech.pivots.iter().enumerate() {
                    if ech.rref.get(r, free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// True iff `v` is a sum of columns.
    pub fn in_span(&self, v: &BitVec) -> Result<bool> {
        if v.len() != self.rows {
            return Err(Error::Dimension { expected: self.rows, found: v.len() });
        }
        let mut basis = XorBasis::new(self.rows, self.cols());
        for c in &self.columns {
            basis.insert(c);
        }
        Ok(basis.contains(v))
    }
}

/// Iterator over a row space given by independent generators.
pub struct RowSpace {
    generators: Vec<BitVec>,
    current: BitVec,
    step: u64,
    total: u64,
}

impl RowSpace {
    fn new(len: usize, generators: Vec<BitVec>) -> Self {
        let total = 1u64 << generators.len();
        Self { generators, current: BitVec::zeros(len), step: 0, total }
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for RowSpace {
    type Item = BitVec;

    fn next(&mut self) -> Option<BitVec> {
        if self.step >= self.total {
            return None;
        }
        if self.step > 0 {
            // Gray code: flip the generator at the lowest set bit of the step
            let g = self.step.trailing_zeros() as usize;
            self.current.xor_with(&self.generators[g]);
        }
        self.step += 1;
        Some(self.current.clone())
    }
}

/// Convenience: add two vectors, reporting a dimension error on mismatch.
pub fn vec_add(a: &BitVec, b: &BitVec) -> Result<BitVec> {
    a.checked_add(b)
}

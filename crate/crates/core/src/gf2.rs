//! Dense bit-packed vectors and matrices over GF(2).
//!
//! Rows are stored as runs of `u64` words, least significant bit first. Bits
//! past the logical length of a row are always zero.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Low `len` bits of `word`, bit `i` of the vector being bit `i` of the word.
    pub fn from_word(len: usize, word: u64) -> Self {
        assert!(
            len <= WORD_BITS,
            "vector of length {len} does not fit in a word"
        );
        let mask = if len == WORD_BITS {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = word & mask;
        }
        v
    }

    /// Packs the vector into a single word. Panics when `len > 64`.
    pub fn to_word(&self) -> u64 {
        assert!(
            self.len <= WORD_BITS,
            "vector of length {} does not fit in a word",
            self.len
        );
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let w = &mut self.words[i / WORD_BITS];
        let m = 1u64 << (i % WORD_BITS);
        if bit {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let b = self.get(i);
        self.set(i, !b);
    }

    pub fn push(&mut self, bit: bool) {
        self.len += 1;
        if self.words.len() < words_for(self.len) {
            self.words.push(0);
        }
        self.set(self.len - 1, bit);
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions holding a one, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// This vector followed by `other`.
    pub fn concat(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        for b in other.bits() {
            out.push(b);
        }
        out
    }

    fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Gf2Vector {
    type Err = Error;

    /// Accepts `0`/`1` characters, optionally wrapped in brackets and
    /// separated by commas or spaces: `110011`, `[1,1,0,0,1,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for (col, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                '[' | ']' | ',' | ' ' | '_' => {}
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        column: col + 1,
                        message: format!("unexpected character {other:?} in bit vector"),
                    })
                }
            }
        }
        Ok(Gf2Vector::from_bits(&bits))
    }
}

impl Serialize for Gf2Vector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Gf2Vector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A dense `rows × cols` matrix over GF(2), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from equal-length rows. With no rows the column count
    /// is `cols_if_empty`.
    pub fn from_rows(rows: &[Gf2Vector], cols_if_empty: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols_if_empty, Gf2Vector::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    pub fn from_columns(columns: &[Gf2Vector], rows_if_empty: usize) -> Result<Self> {
        let rows = columns.first().map_or(rows_if_empty, Gf2Vector::len);
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    got: c.len(),
                });
            }
            for i in c.support() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Parses rows written as bit strings, e.g. `["01111", "10111"]`.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.parse::<Gf2Vector>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&parsed, 0)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        let m = 1u64 << (j % WORD_BITS);
        if bit {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub fn row(&self, i: usize) -> Gf2Vector {
        Gf2Vector {
            len: self.cols,
            words: self.row_words(i).to_vec(),
        }
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn row_vectors(&self) -> Vec<Gf2Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column_vectors(&self) -> Vec<Gf2Vector> {
        self.transpose().row_vectors()
    }

    /// `row[dst] += row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let stride = self.stride;
        let (a, b) = (src * stride, dst * stride);
        for k in 0..stride {
            let s = self.data[a + k];
            self.data[b + k] ^= s;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (x, y) = (self.get(i, a), self.get(i, b));
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for (k, &w) in self.row_words(i).iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let j = k * WORD_BITS + w.trailing_zeros() as usize;
                    t.set(j, i, true);
                    w &= w - 1;
                }
            }
        }
        t
    }

    /// Keeps only the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                if self.get(i, j) {
                    m.set(i, jj, true);
                }
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            let src = self.row_words(i).to_vec();
            m.row_words_mut(ii).copy_from_slice(&src);
        }
        m
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.rows != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: other.rows,
            });
        }
        let mut m = Gf2Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    m.set(i, j, true);
                }
            }
            for j in 0..other.cols {
                if other.get(i, j) {
                    m.set(i, self.cols + j, true);
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &Gf2Vector) -> Gf2Vector {
        assert_eq!(v.len(), self.cols, "length mismatch");
        let mut out = Gf2Vector::zeros(self.rows);
        for i in 0..self.rows {
            let ones: u32 = self
                .row_words(i)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if ones % 2 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    /// Reduced row-echelon form and the (strictly increasing) pivot columns.
    /// Zero rows are kept at the bottom so the shape is unchanged.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.add_row(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : self · v = 0}`, one vector per non-pivot column.
    pub fn null_space_basis(&self) -> Vec<Gf2Vector> {
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut v = Gf2Vector::unit(self.cols, j);
                for (i, &p) in pivots.iter().enumerate() {
                    if red.get(i, j) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// A basis of the row space (the nonzero rows of the rref).
    pub fn row_space_basis(&self) -> Vec<Gf2Vector> {
        let (red, pivots) = self.rref();
        (0..pivots.len()).map(|i| red.row(i)).collect()
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        write!(f, "{self}")
    }
}

/// Default bound on the number of span vectors a caller may request.
pub const SPAN_CAP: u64 = 1 << 24;

/// Every vector in the span of `basis`, each exactly once, starting with zero.
///
/// Vectors are produced in Gray-code order so consecutive outputs differ by a
/// single basis vector. `len` is the vector length used when `basis` is empty.
pub fn span_enumerate(
    basis: &[Gf2Vector],
    len: usize,
    cap: u64,
) -> Result<impl Iterator<Item = Gf2Vector> + '_> {
    let dim = basis.len();
    if dim >= 64 || (1u64 << dim) > cap {
        return Err(Error::DimensionCapExceeded { dim, cap });
    }
    let len = basis.first().map_or(len, Gf2Vector::len);
    if basis.iter().any(|b| b.len() != len) {
        return Err(Error::LengthMismatch {
            expected: len,
            got: basis
                .iter()
                .map(Gf2Vector::len)
                .find(|&l| l != len)
                .unwrap_or(len),
        });
    }
    let total = 1u64 << dim;
    let mut current = Gf2Vector::zeros(len);
    let mut step = 0u64;
    Ok(std::iter::from_fn(move || {
        if step == total {
            return None;
        }
        if step > 0 {
            current.xor_assign(&basis[step.trailing_zeros() as usize]);
        }
        step += 1;
        Some(current.clone())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sec5_x() -> Gf2Matrix {
        let d = Gf2Matrix::parse_rows(&["01111", "10111", "11010", "11110", "01001"]).unwrap();
        Gf2Matrix::identity(5).hstack(&d).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(6).rank(), 6);
        assert_eq!(Gf2Matrix::zeros(3, 3).rank(), 0);
        assert_eq!(sec5_x().rank(), 5);
        assert_eq!(Gf2Matrix::zeros(0, 4).rank(), 0);
        assert_eq!(Gf2Matrix::zeros(4, 0).rank(), 0);
    }

    #[test]
    fn rref_of_standard_form_is_itself() {
        let (red, piv) = Gf2Matrix::identity(4).rref();
        assert_eq!(red, Gf2Matrix::identity(4));
        assert_eq!(piv, vec![0, 1, 2, 3]);
        let x = sec5_x();
        let (red, piv) = x.rref();
        assert_eq!(red, x);
        assert_eq!(piv, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn null_space_examples() {
        let m = Gf2Matrix::parse_rows(&["101", "011"]).unwrap();
        let basis = m.null_space_basis();
        assert_eq!(basis, vec!["111".parse().unwrap()]);
        assert!(Gf2Matrix::identity(5).null_space_basis().is_empty());
        let x = sec5_x();
        let basis = x.null_space_basis();
        assert_eq!(basis.len(), 5);
        for v in &basis {
            assert!(x.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn span_examples() {
        assert_eq!(
            span_enumerate(&[], 3, SPAN_CAP)
                .unwrap()
                .collect::<Vec<_>>(),
            vec![Gf2Vector::zeros(3)]
        );
        let basis = vec![Gf2Vector::unit(2, 0), Gf2Vector::unit(2, 1)];
        let mut all: Vec<_> = span_enumerate(&basis, 2, SPAN_CAP).unwrap().collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 4);
        let big: Vec<_> = (0..40).map(|i| Gf2Vector::unit(40, i)).collect();
        assert!(matches!(
            span_enumerate(&big, 40, SPAN_CAP),
            Err(Error::DimensionCapExceeded { dim: 40, .. })
        ));
    }

    #[test]
    fn vector_parsing() {
        let v: Gf2Vector = "[1,1,0,0,1,1]".parse().unwrap();
        assert_eq!(v.to_string(), "110011");
        assert_eq!(v.weight(), 4);
        assert_eq!(v.support(), vec![0, 1, 4, 5]);
        assert!("10x".parse::<Gf2Vector>().is_err());
    }

    #[test]
    fn padding_stays_zero_across_words() {
        let mut v = Gf2Vector::zeros(70);
        v.set(69, true);
        v.set(3, true);
        let mut w = v.clone();
        w.push(true);
        assert_eq!(w.len(), 71);
        assert_eq!(w.weight(), 3);
        let m = Gf2Matrix::from_rows(&[v.clone(), v], 0).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.transpose().transpose(), m);
    }
}

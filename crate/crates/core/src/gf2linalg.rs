//! Dense linear algebra over GF(2) with rows packed into `u64` words.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("width mismatch: expected {expected}, got {got}")]
    Width { expected: usize, got: usize },
}

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
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

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `self ^= other`; lengths must agree.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        xor_words(&mut self.words, &other.words);
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "BitVector({s})")
    }
}

/// Rows of equal width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    width: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn new(width: usize) -> Self {
        BitMatrix { width, rows: Vec::new() }
    }

    pub fn from_rows(width: usize, rows: Vec<BitVector>) -> Result<Self, LinalgError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != width) {
            return Err(LinalgError::Width { expected: width, got: bad.len() });
        }
        Ok(BitMatrix { width, rows })
    }

    /// Parses rows like `"110"`; for tests and examples.
    pub fn from_strs(rows: &[&str]) -> Self {
        let width = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| BitVector::from_bools(&r.bytes().map(|b| b == b'1').collect::<Vec<_>>()))
            .collect();
        Self::from_rows(width, rows).expect("rows of equal length")
    }

    pub fn push(&mut self, row: BitVector) -> Result<(), LinalgError> {
        if row.len() != self.width {
            return Err(LinalgError::Width { expected: self.width, got: row.len() });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// `M x` for a column vector `x` of length `width`.
    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector, LinalgError> {
        if x.len() != self.width {
            return Err(LinalgError::Width { expected: self.width, got: x.len() });
        }
        let mut out = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            let parity = row.words.iter().zip(&x.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
            if parity % 2 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }
}

/// Reduced row-echelon basis of a row space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonBasis {
    width: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    /// Pivot column of each row, strictly increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo the row space; zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVector) -> Result<BitVector, LinalgError> {
        if v.len() != self.width {
            return Err(LinalgError::Width { expected: self.width, got: v.len() });
        }
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool, LinalgError> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// For each column, the row whose pivot it is.
    pub fn pivot_rows(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.width];
        for (r, &p) in self.pivots.iter().enumerate() {
            out[p] = Some(r);
        }
        out
    }

    /// Basis of `{x : row . x = 0 for every row}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let pivot_rows = self.pivot_rows();
        (0..self.width)
            .filter(|&c| pivot_rows[c].is_none())
            .map(|free| {
                let mut x = BitVector::unit(self.width, free);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if row.get(free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    pub fn to_matrix(&self) -> BitMatrix {
        BitMatrix { width: self.width, rows: self.rows.clone() }
    }
}

/// Gauss-Jordan elimination to reduced row-echelon form.
pub fn echelonize(m: &BitMatrix) -> EchelonBasis {
    echelonize_rows(m.width, m.rows.clone())
}

/// As [`echelonize`], consuming the rows.
pub fn echelonize_rows(width: usize, rows: Vec<BitVector>) -> EchelonBasis {
    let n_words = words_for(width);
    let n_rows = rows.len();
    let mut flat = Vec::with_capacity(n_rows * n_words);
    for r in &rows {
        debug_assert_eq!(r.len, width);
        flat.extend_from_slice(&r.words);
    }
    drop(rows);

    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..width {
        if rank == n_rows {
            break;
        }
        let (wi, mask) = (col / WORD, 1u64 << (col % WORD));
        let Some(found) = (rank..n_rows).find(|&r| flat[r * n_words + wi] & mask != 0) else {
            continue;
        };
        if found != rank {
            for w in 0..n_words {
                flat.swap(found * n_words + w, rank * n_words + w);
            }
        }
        let (head, tail) = flat.split_at_mut(rank * n_words);
        let (pivot, below) = tail.split_at_mut(n_words);
        // words before wi are zero in the pivot row
        let pivot = &pivot[wi..];
        for r in head.chunks_exact_mut(n_words).chain(below.chunks_exact_mut(n_words)) {
            if r[wi] & mask != 0 {
                xor_words(&mut r[wi..], pivot);
            }
        }
        pivots.push(col);
        rank += 1;
    }

    flat.truncate(rank * n_words);
    let rows = flat
        .chunks_exact(n_words.max(1))
        .take(rank)
        .map(|w| BitVector { len: width, words: w.to_vec() })
        .collect();
    EchelonBasis { width, rows, pivots }
}

pub fn rank(m: &BitMatrix) -> usize {
    echelonize(m).rank()
}

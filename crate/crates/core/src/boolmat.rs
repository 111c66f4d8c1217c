//! Dense boolean matrices packed into 64-bit words, with the cubic
//! word-parallel product used by the neighborhood-pair subroutine.

use crate::graph::GraphError;

const WORD: usize = 64;

/// Row-major bit matrix; padding bits past `cols` stay zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BoolMatrix {
        let words_per_row = cols.div_ceil(WORD);
        BoolMatrix { rows, cols, words_per_row, bits: vec![0; rows * words_per_row] }
    }

    pub fn identity(n: usize) -> BoolMatrix {
        let mut m = BoolMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        let w = self.bits[i * self.words_per_row + j / WORD];
        (w >> (j % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let idx = i * self.words_per_row + j / WORD;
        let mask = 1u64 << (j % WORD);
        if value {
            self.bits[idx] |= mask;
        } else {
            self.bits[idx] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// First set entry in row-major order.
    pub fn first_set(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            let row = &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row];
            for (wi, &w) in row.iter().enumerate() {
                if w != 0 {
                    return Some((i, wi * WORD + w.trailing_zeros() as usize));
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> BoolMatrix {
        let mut t = BoolMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Entrywise AND; dimensions must match.
    pub fn and(&self, other: &BoolMatrix) -> Result<BoolMatrix, GraphError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(GraphError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a &= *b;
        }
        Ok(out)
    }
}

/// Boolean matrix product: C[i,j] = OR over k of A[i,k] AND B[k,j].
/// For each set bit A[i,k], B's row k is OR-ed into C's row i a word
/// at a time.
pub fn bool_matmul(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix, GraphError> {
    if a.cols != b.rows {
        return Err(GraphError::DimensionMismatch {
            left: (a.rows, a.cols),
            right: (b.rows, b.cols),
        });
    }
    let mut c = BoolMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        let a_row = &a.bits[i * a.words_per_row..(i + 1) * a.words_per_row];
        for (wi, &word) in a_row.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let k = wi * WORD + w.trailing_zeros() as usize;
                w &= w - 1;
                let b_row = &b.bits[k * b.words_per_row..(k + 1) * b.words_per_row];
                let c_row =
                    &mut c.bits[i * c.words_per_row..(i + 1) * c.words_per_row];
                for (cw, bw) in c_row.iter_mut().zip(b_row) {
                    *cw |= *bw;
                }
            }
        }
    }
    Ok(c)
}

//! Integer matrices: a sparse `i64` form for differentials and chain maps,
//! and a dense arbitrary-precision form for Smith normal form.

use std::collections::HashMap;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Sparse matrix with entries sorted by `(row, col)` and no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, 1)).collect(),
        }
    }

    /// Sorts, sums duplicates and drops zeros.
    pub fn from_entries(rows: usize, cols: usize, mut entries: Vec<(usize, usize, i64)>) -> Result<Self> {
        debug_assert!(entries.iter().all(|&(r, c, _)| r < rows && c < cols));
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut out: Vec<(usize, usize, i64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match out.last_mut() {
                Some(last) if last.0 == r && last.1 == c => {
                    last.2 = last.2.checked_add(v).ok_or(Error::Overflow)?;
                }
                _ => out.push((r, c, v)),
            }
        }
        out.retain(|e| e.2 != 0);
        Ok(Self {
            rows,
            cols,
            entries: out,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries
            .binary_search_by_key(&(r, c), |&(a, b, _)| (a, b))
            .map(|i| self.entries[i].2)
            .unwrap_or(0)
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut by_row: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for &(r, c, v) in &rhs.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut acc: HashMap<(usize, usize), i128> = HashMap::new();
        for &(r, k, v) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, w) in row {
                    *acc.entry((r, c)).or_insert(0) += v as i128 * w as i128;
                }
            }
        }
        let entries = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| i64::try_from(v).map(|v| (r, c, v)).map_err(|_| Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(self.rows, rhs.cols, entries)
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut entries = self.entries.clone();
        for &(r, c, v) in &rhs.entries {
            entries.push((r, c, v.checked_neg().ok_or(Error::Overflow)?));
        }
        Self::from_entries(self.rows, self.cols, entries)
    }

    /// Columns of `self` followed by columns of `rhs`.
    pub fn hstack(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut entries = self.entries.clone();
        entries.extend(rhs.entries.iter().map(|&(r, c, v)| (r, c + self.cols, v)));
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseMatrix {
            rows: self.rows,
            cols: self.cols + rhs.cols,
            entries,
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for &(r, c, v) in &self.entries {
            m[(r, c)] = BigInt::from(v);
        }
        m
    }
}

/// Dense row-major matrix of big integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[target] -= q * row[source]`.
    pub fn sub_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.data[source * self.cols + c];
            if !s.is_zero() {
                let delta = q * s;
                self.data[target * self.cols + c] -= delta;
            }
        }
    }

    /// `col[target] -= q * col[source]`.
    pub fn sub_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = &self.data[r * self.cols + source];
            if !s.is_zero() {
                let delta = q * s;
                self.data[r * self.cols + target] -= delta;
            }
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = &mut self.data[r * self.cols + c];
            *v = -std::mem::take(v);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = &mut self.data[r * self.cols + c];
            *v = -std::mem::take(v);
        }
    }

    /// Only off-diagonal zeros are checked.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[(r, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = v / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_normalizes() {
        let m = SparseMatrix::from_entries(2, 2, vec![(1, 0, 3), (0, 1, 2), (1, 0, -3), (0, 1, 1)]).unwrap();
        assert_eq!(m.entries, vec![(0, 1, 3)]);
        assert_eq!(m.get(0, 1), 3);
        assert_eq!(m.get(1, 0), 0);
    }

    #[test]
    fn sparse_product() {
        let a = SparseMatrix::from_entries(2, 2, vec![(0, 0, 1), (0, 1, 2), (1, 1, 3)]).unwrap();
        let b = SparseMatrix::from_entries(2, 1, vec![(0, 0, 5), (1, 0, -1)]).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.entries, vec![(0, 0, 3), (1, 0, -3)]);
        assert_eq!(p.to_dense(), a.to_dense().mul(&b.to_dense()));
    }

    #[test]
    fn overflow_is_reported() {
        let a = SparseMatrix::from_entries(1, 1, vec![(0, 0, i64::MAX)]).unwrap();
        assert_eq!(a.mul(&a), Err(Error::Overflow));
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::identity(4).determinant(), BigInt::one());
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(m.determinant(), BigInt::from(-8));
        let m = IntMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]);
        assert_eq!(m.determinant(), BigInt::from(-2));
        let singular = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.determinant(), BigInt::zero());
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::one());
    }
}

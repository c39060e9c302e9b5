use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LinalgError;

/// Sparse matrix over Z in compressed-column layout.
///
/// Each column is a list of `(row, value)` pairs sorted by row with no stored
/// zeros. Values are arbitrary precision.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|j| vec![(j, BigInt::one())]).collect();
        SparseIntMatrix { rows: n, cols: n, columns }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions
    /// are summed and resulting zeros are dropped.
    pub fn from_triplets<I, V>(rows: usize, cols: usize, triplets: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, V)>,
        V: Into<BigInt>,
    {
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(LinalgError::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            *acc[c].entry(r).or_insert_with(BigInt::zero) += v.into();
        }
        let columns = acc.into_iter().map(|col| col.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        Ok(SparseIntMatrix { rows, cols, columns })
    }

    /// Builds a matrix from already-assembled columns. Each column is sorted
    /// and zero entries are removed; duplicate rows are summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Result<Self, LinalgError> {
        let cols = columns.len();
        let mut out = Vec::with_capacity(cols);
        for (c, mut col) in columns.into_iter().enumerate() {
            col.sort_by_key(|(r, _)| *r);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(col.len());
            for (r, v) in col {
                if r >= rows {
                    return Err(LinalgError::IndexOutOfRange { row: r, col: c, rows, cols });
                }
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            out.push(merged);
        }
        Ok(SparseIntMatrix { rows, cols, columns: out })
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    columns[j].push((i, BigInt::from(v)));
                }
            }
        }
        SparseIntMatrix { rows: nrows, cols: ncols, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[(usize, BigInt)]> {
        self.columns.iter().map(Vec::as_slice)
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        match self.columns[c].binary_search_by_key(&r, |(row, _)| *row) {
            Ok(pos) => self.columns[c][pos].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Iterates nonzero entries as `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triplets() {
            columns[r].push((c, v.clone()));
        }
        // column-major traversal already yields ascending c within each new column
        SparseIntMatrix { rows: self.cols, cols: self.rows, columns }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseIntMatrix) -> Result<SparseIntMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                context: "matrix product",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, b) in col {
                    for (i, a) in &self.columns[*k] {
                        *acc.entry(*i).or_insert_with(BigInt::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseIntMatrix { rows: self.rows, cols: rhs.cols, columns })
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        let mut out = vec![BigInt::zero(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if x[c].is_zero() {
                continue;
            }
            for (r, v) in col {
                out[*r] += v * &x[c];
            }
        }
        out
    }

    pub fn mul_vec_rational(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        let mut out = vec![BigRational::zero(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if x[c].is_zero() {
                continue;
            }
            for (r, v) in col {
                out[*r] += &x[c] * BigRational::from_integer(v.clone());
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &SparseIntMatrix) -> Result<SparseIntMatrix, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                context: "horizontal concatenation",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut columns = self.columns.clone();
        columns.extend(rhs.columns.iter().cloned());
        Ok(SparseIntMatrix { rows: self.rows, cols: self.cols + rhs.cols, columns })
    }

    /// Largest bit length over all stored entries.
    pub fn max_bits(&self) -> u64 {
        self.triplets().map(|(_, _, v)| v.bits()).max().unwrap_or(0)
    }
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseIntMatrix({}x{}, nnz={})", self.rows, self.cols, self.nnz())?;
        if self.rows * self.cols <= 64 {
            for r in 0..self.rows {
                write!(f, "\n  [")?;
                for c in 0..self.cols {
                    write!(f, "{:>4}", self.get(r, c))?;
                }
                write!(f, " ]")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_accumulate_and_drop_zeros() {
        let m = SparseIntMatrix::from_triplets(2, 2, vec![(0, 0, 1), (0, 0, -1), (1, 1, 3), (1, 1, 2)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), BigInt::from(5));
        assert_eq!(m.get(0, 0), BigInt::zero());
    }

    #[test]
    fn out_of_range_triplet_rejected() {
        assert!(SparseIntMatrix::from_triplets(2, 2, vec![(2, 0, 1)]).is_err());
    }

    #[test]
    fn transpose_and_product() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 2, 0], vec![0, 3, 4]]);
        let at = a.transpose();
        assert_eq!(at, SparseIntMatrix::from_dense(&[vec![1, 0], vec![2, 3], vec![0, 4]]));
        let p = a.mul(&at).unwrap();
        assert_eq!(p, SparseIntMatrix::from_dense(&[vec![5, 6], vec![6, 25]]));
        assert!(at.mul(&at).is_err());
    }

    #[test]
    fn mul_vec_matches_dense() {
        let a = SparseIntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
        let x = vec![BigInt::from(1), BigInt::from(-1)];
        assert_eq!(a.mul_vec(&x), vec![BigInt::from(-2), BigInt::from(-2)]);
    }
}

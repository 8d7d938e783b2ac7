use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix. Only ever a handful of rows or columns wide.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from rows, rejecting ragged input.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Ragged {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns<const N: usize>(cols: &[[T; N]]) -> Self {
        Self::from_fn(N, cols.len(), |i, j| cols[j][i])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Row `i` as a fixed-size array. Panics if the width differs from `N`.
    pub fn row_array<const N: usize>(&self, i: usize) -> [T; N] {
        assert_eq!(self.cols, N, "row width mismatch");
        std::array::from_fn(|j| self[(i, j)])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self[(i, k)] * rhs[(k, j)])
        })
    }

    /// `self · selfᵀ`, always symmetric by construction.
    pub fn gram_rows(&self) -> SymMatrix<T> {
        SymMatrix::from_fn(self.rows, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self[(i, k)] * self[(j, k)])
        })
    }

    /// Largest absolute entry, zero for an empty matrix.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    /// Smallest entry, `+∞` for an empty matrix.
    pub fn min_entry(&self) -> T {
        self.data.iter().fold(T::infinity(), |m, &x| m.min(x))
    }

    /// `‖self − other‖_max`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    pub fn to_rows_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_f64_lossy()).collect())
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Real symmetric matrix. Storage is full but `a[i][j] == a[j][i]` always
/// holds bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    inner: Matrix<T>,
}

impl<T: Scalar> SymMatrix<T> {
    /// Builds from the upper triangle of `f`; the lower triangle mirrors it.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut inner = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                inner[(i, j)] = v;
                inner[(j, i)] = v;
            }
        }
        Self { inner }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: Matrix::identity(n),
        }
    }

    pub fn diagonal(d: &[T]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i] } else { T::zero() })
    }

    /// Accepts a square matrix whose asymmetry is within `tol` relative to
    /// `1 + ‖a‖_max`, then symmetrizes it by averaging.
    pub fn from_matrix(a: &Matrix<T>, tol: T) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let bound = tol * (T::one() + a.max_abs());
        let n = a.rows();
        for i in 0..n {
            for j in (i + 1)..n {
                let d = (a[(i, j)] - a[(j, i)]).abs();
                if d.is_nan() || d > bound {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        let half = T::lit(0.5);
        Ok(Self::from_fn(n, |i, j| {
            if i == j {
                a[(i, i)]
            } else {
                (a[(i, j)] + a[(j, i)]) * half
            }
        }))
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R], tol: T) -> Result<Self> {
        Self::from_matrix(&Matrix::from_rows(rows)?, tol)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.inner.rows()
    }

    pub fn as_matrix(&self) -> &Matrix<T> {
        &self.inner
    }

    pub fn max_abs(&self) -> T {
        self.inner.max_abs()
    }

    pub fn trace(&self) -> T {
        (0..self.n()).fold(T::zero(), |acc, i| acc + self.inner[(i, i)])
    }

    /// `P A Pᵀ` for the permutation sending row `i` to row `perm[i]`'s source,
    /// i.e. entry `(i, j)` of the result is `a[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n());
        Self::from_fn(self.n(), |i, j| self.inner[(perm[i], perm[j])])
    }
}

impl<T> Index<(usize, usize)> for SymMatrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, idx: (usize, usize)) -> &T {
        &self.inner[idx]
    }
}

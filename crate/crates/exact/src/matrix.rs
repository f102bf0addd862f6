//! Dense row-major matrices over an exact field.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::{ExactError, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, PartialEq)]
pub struct Rref<T> {
    pub matrix: Matrix<T>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

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

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ExactError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix from small integers; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.row_iter().map(<[T]>::to_vec).collect()
    }

    pub fn from_columns(cols: &[Vec<T>]) -> Result<Self, ExactError> {
        let rows = cols.first().map_or(0, Vec::len);
        for c in cols {
            if c.len() != rows {
                return Err(ExactError::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
        }
        Ok(Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone()))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == -self[(j, i)].clone())
            })
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Matrix product; panics when the inner dimensions differ.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        self.row_iter()
            .map(|r| dot(r, v))
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        })
    }

    /// `self` on top of `rhs`.
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Self {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    pub fn block_diagonal(a: &Self, b: &Self) -> Self {
        Self::from_fn(a.rows + b.rows, a.cols + b.cols, |i, j| {
            match (i < a.rows, j < a.cols) {
                (true, true) => a[(i, j)].clone(),
                (false, false) => b[(i - a.rows, j - a.cols)].clone(),
                _ => T::zero(),
            }
        })
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = T::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, returned in reduced echelon form
    /// (first nonzero entry of every vector is 1).
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        if free.is_empty() {
            return Vec::new();
        }
        let raw: Vec<Vec<T>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix[(i, f)].clone();
                }
                v
            })
            .collect();
        echelon_basis(raw, self.cols)
    }

    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return T::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = det * pivot.clone();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() / pivot.clone();
                for j in c..n {
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if !self.is_square() {
            return Err(ExactError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let Rref { matrix, rank, .. } = self.hstack(&Self::identity(n)).rref();
        if rank < n || (0..n).any(|i| matrix[(i, i)] != T::one()) {
            return Err(ExactError::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| matrix[(i, n + j)].clone()))
    }

    /// Solves `self * x = b`, returning one solution (free variables zero)
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Self::from_columns(&[b.to_vec()]).expect("column"));
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = matrix[(i, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Reduced echelon basis of the span of `vectors` (zero rows dropped).
pub fn echelon_basis<T: Scalar>(vectors: Vec<Vec<T>>, len: usize) -> Vec<Vec<T>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::new(vectors.len(), len, vectors.into_iter().flatten().collect())
        .expect("vectors of equal length");
    let Rref { matrix, rank, .. } = m.rref();
    (0..rank).map(|i| matrix.row(i).to_vec()).collect()
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in self.row_iter() {
            let cells: Vec<String> = r.iter().map(Scalar::to_text).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> fmt::Debug for Rref<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rref")
            .field("matrix", &self.matrix)
            .field("rank", &self.rank)
            .field("pivots", &self.pivots)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, Rational};

    type M = Matrix<Rational>;

    #[test]
    fn rref_identity() {
        let r = M::identity(2).rref();
        assert_eq!(r.matrix, M::identity(2));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_proportional_rows() {
        let r = M::from_i64(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.matrix, M::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        assert_eq!(M::zeros(3, 3).kernel_basis().len(), 3);
        assert!(M::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_is_echelonized() {
        let m = M::from_i64(&[&[1, 1, 1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 3);
        for v in &k {
            let lead = v.iter().find(|x| !num_traits::Zero::is_zero(*x)).unwrap();
            assert_eq!(*lead, int(1));
            assert!(m.mul_vec(v).iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn inverse_and_solve() {
        let m = M::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), M::identity(2));
        assert_eq!(m.solve(&[int(3), int(2)]).unwrap(), vec![int(1), int(1)]);
        let sing = M::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(ExactError::Singular));
        assert!(sing.solve(&[int(1), int(0)]).is_none());
        assert_eq!(sing.determinant(), int(0));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(M::from_rows(vec![vec![int(1)], vec![int(1), int(2)]]).is_err());
    }
}
